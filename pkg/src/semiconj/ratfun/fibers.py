"""Exact-multiplicity fibers ``f^-1{t}`` over exact values ``t``."""

from __future__ import annotations

from .points import INF
from .poly import Poly
from .rational import RatFun
from .roots import roots_as_points
from .scalar import as_qi

__all__ = ["fiber_polynomial", "exact_fiber", "is_critical_value_exact"]


def fiber_polynomial(f: RatFun, t) -> Poly:
    """``num - t den`` (finite ``t``) or ``den`` (``t = oo``)."""
    if t is INF:
        return f.den
    return f.num - f.den * as_qi(t)


def _infinity_multiplicity(f: RatFun, t) -> int:
    d = f.degree
    p = fiber_polynomial(f, t)
    if t is INF:
        return max(f.num.degree - f.den.degree, 0)
    return d - p.degree


def exact_fiber(f: RatFun, t, precision: int = 256, seed: int = 0) -> list[tuple[object, int]]:
    """Points of ``f^-1{t}`` with local degrees; the local degrees sum to ``deg f``."""
    p = fiber_polynomial(f, t)
    out = list(roots_as_points(p, precision, seed)) if p.degree > 0 else []
    m = _infinity_multiplicity(f, t)
    if m > 0:
        out.append((INF, m))
    return out


def is_critical_value_exact(f: RatFun, t) -> bool:
    """Exact test: does the fiber over ``t`` contain a point of local degree > 1?"""
    p = fiber_polynomial(f, t)
    if _infinity_multiplicity(f, t) > 1:
        return True
    if p.degree < 1:
        return False
    from .poly import poly_gcd

    return poly_gcd(p, p.derivative()).degree > 0
