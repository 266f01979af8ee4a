"""Hot numeric loops with a numba backend and a pure-numpy fallback.

The backend is chosen once at import time:

* ``SEMICONJ_BACKEND=numpy`` (or ``SEMICONJ_DISABLE_NUMBA=1``) forces numpy;
* otherwise numba is used when it imports cleanly.

Both backends expose the same functions; results agree to rounding.
"""

import os

from . import _numpy

SEGMENT = 0
ARC = 1


def _want_numba() -> bool:
    if os.environ.get("SEMICONJ_DISABLE_NUMBA", "").strip() not in ("", "0"):
        return False
    return os.environ.get("SEMICONJ_BACKEND", "numba").strip().lower() != "numpy"


if _want_numba():
    try:
        from . import _numba as _impl
        BACKEND = "numba"
    except ImportError:  # numba missing or broken
        _impl = _numpy
        BACKEND = "numpy"
else:
    _impl = _numpy
    BACKEND = "numpy"

horner2 = _impl.horner2
polyval = _impl.polyval
aberth = _impl.aberth
track_piece = _impl.track_piece
poincare_coeffs = _impl.poincare_coeffs
series_eval = _impl.series_eval


def backend(name: str):
    """Return the kernel module for ``name`` ('numba' or 'numpy'); used by tests and benchmarks."""
    if name == "numpy":
        return _numpy
    from . import _numba

    return _numba
