"""Points of the Riemann sphere: exact, approximate (certified disk) or infinity.

Approximate values use a small ball arithmetic over ``mpmath`` so that a
value computed from approximate inputs carries a rigorous enclosure radius.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .scalar import QI, as_qi

__all__ = [
    "Infinity",
    "INF",
    "ApproxPoint",
    "Ball",
    "ProjPoint",
    "is_inf",
    "same_point",
    "point_key",
    "point_to_complex",
    "point_to_json",
    "format_point",
]


class Infinity:
    """The point at infinity (singleton)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "oo"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


@dataclass(frozen=True)
class ApproxPoint:
    """A point known to lie in the closed disk ``|z - value| <= radius``.

    ``poly`` optionally records an exact squarefree polynomial having the point
    as a root; ``prec`` is the working precision (bits) of the computation.
    """

    value: mpmath.mpc
    radius: mpmath.mpf
    prec: int
    poly: object = field(default=None, compare=False, repr=False)

    def __complex__(self):
        return complex(self.value)

    def ball(self) -> "Ball":
        return Ball(self.value, self.radius)


ProjPoint = QI | ApproxPoint | Infinity


def is_inf(p) -> bool:
    return p is INF


def _eps(prec: int):
    return mpmath.ldexp(mpmath.mpf(1), -prec + 2)


class Ball:
    """Complex ball ``(center, radius)`` with outward-rounded radius updates."""

    __slots__ = ("c", "r")

    def __init__(self, c, r=0):
        self.c = mpmath.mpc(c)
        self.r = mpmath.mpf(r)

    @staticmethod
    def of(x) -> "Ball":
        if isinstance(x, Ball):
            return x
        if isinstance(x, ApproxPoint):
            return x.ball()
        if isinstance(x, QI):
            c = x.to_mpc()
            # conversion of a rational to binary is itself rounded
            return Ball(c, abs(c) * _eps(mpmath.mp.prec))
        return Ball(mpmath.mpc(x), 0)

    def _round(self, c, r) -> "Ball":
        return Ball(c, r + abs(c) * _eps(mpmath.mp.prec))

    def __add__(self, o):
        o = Ball.of(o)
        return self._round(self.c + o.c, self.r + o.r)

    __radd__ = __add__

    def __sub__(self, o):
        o = Ball.of(o)
        return self._round(self.c - o.c, self.r + o.r)

    def __rsub__(self, o):
        return Ball.of(o) - self

    def __neg__(self):
        return Ball(-self.c, self.r)

    def __mul__(self, o):
        o = Ball.of(o)
        c = self.c * o.c
        r = abs(self.c) * o.r + abs(o.c) * self.r + self.r * o.r
        return self._round(c, r)

    __rmul__ = __mul__

    def inverse(self) -> "Ball":
        m = abs(self.c)
        if m <= self.r:
            raise ZeroDivisionError("ball contains zero")
        c = 1 / self.c
        return self._round(c, self.r / (m * (m - self.r)))

    def __truediv__(self, o):
        return self * Ball.of(o).inverse()

    def contains_zero(self) -> bool:
        return abs(self.c) <= self.r

    def overlaps(self, o: "Ball") -> bool:
        return abs(self.c - o.c) <= self.r + o.r

    def __repr__(self):
        return f"Ball({mpmath.nstr(self.c, 12)}, {mpmath.nstr(self.r, 3)})"


def same_point(p, q) -> bool:
    """Equality of sphere points, with certified disks compared by overlap."""
    if p is INF or q is INF:
        return p is q
    if isinstance(p, QI) and isinstance(q, QI):
        return p == q
    return Ball.of(p).overlaps(Ball.of(q))


def point_key(p):
    """Canonical sort key: exact points first, then approximate ones, infinity last."""
    if p is INF:
        return (2, 0, 0)
    if isinstance(p, QI):
        return (0, float(p.re), float(p.im))
    v = complex(p)
    return (1, round(v.real, 9), round(v.imag, 9))


def point_to_complex(p) -> complex:
    if p is INF:
        return complex("inf")
    return complex(p)


def format_point(p) -> str:
    if p is INF:
        return "oo"
    if isinstance(p, QI):
        return str(p)
    return mpmath.nstr(p.value, 15)


def point_to_json(p) -> dict:
    if p is INF:
        return {"point": "oo", "exact": True}
    if isinstance(p, QI):
        return {"point": str(p), "exact": True}
    v = complex(p)
    return {
        "point": [float(v.real), float(v.imag)],
        "exact": False,
        "error_bound": float(p.radius),
        "precision_bits": p.prec,
    }


def as_point(x):
    """Coerce user input (int, Fraction, QI, 'oo', complex, ApproxPoint) to a sphere point."""
    if x is INF or (isinstance(x, str) and x.strip() in ("oo", "inf", "infinity")):
        return INF
    if isinstance(x, (QI, ApproxPoint)):
        return x
    if isinstance(x, complex):
        return ApproxPoint(mpmath.mpc(x), mpmath.mpf(0), 53)
    return as_qi(x)
