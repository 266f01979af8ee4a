"""Exact rational functions over Q(i) in canonical form."""

from __future__ import annotations

import mpmath

from .points import INF, ApproxPoint, Ball
from .poly import Poly, format_poly, poly_gcd
from .scalar import ONE, ZERO, QI, as_qi

__all__ = ["RatFun", "Z", "compose", "iterate", "derivative", "evaluate", "local_degree",
           "moebius_conjugate", "moebius_inverse", "equals"]


class RatFun:
    """``num/den`` with ``gcd(num, den) = 1`` and ``den`` monic.

    Instances are immutable and canonical, so ``==`` is the exact identity test.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical=False):
        if not isinstance(num, Poly):
            num = Poly.const(num) if not isinstance(num, (list, tuple)) else Poly(num)
        if den is None:
            den = Poly.const(ONE)
        elif not isinstance(den, Poly):
            den = Poly.const(den) if not isinstance(den, (list, tuple)) else Poly(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _canonical:
            if not num:
                den = Poly.const(ONE)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
                lc = den.lc
                if lc != ONE:
                    inv = lc.inverse()
                    num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @classmethod
    def poly(cls, p: Poly) -> "RatFun":
        return cls(p, Poly.const(ONE), _canonical=True)

    @classmethod
    def const(cls, c) -> "RatFun":
        return cls(Poly.const(c))

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree, 0)

    def is_const(self) -> bool:
        return self.num.degree <= 0 and self.den.degree <= 0

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    # field operations ------------------------------------------------------
    def _wrap(self, o) -> "RatFun":
        if isinstance(o, RatFun):
            return o
        if isinstance(o, Poly):
            return RatFun(o)
        return RatFun.const(o)

    def __add__(self, o):
        o = self._wrap(o)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _canonical=True)

    def __sub__(self, o):
        return self + (-self._wrap(o))

    def __rsub__(self, o):
        return self._wrap(o) - self

    def __mul__(self, o):
        o = self._wrap(o)
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._wrap(o)
        if not o.num:
            raise ZeroDivisionError("division by the zero function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return self._wrap(o) / self

    def __pow__(self, n: int):
        if n < 0:
            if not self.num:
                raise ZeroDivisionError("negative power of the zero function")
            return RatFun(self.den ** (-n), self.num ** (-n))
        return RatFun(self.num ** n, self.den ** n, _canonical=True).canonical()

    def canonical(self) -> "RatFun":
        return RatFun(self.num, self.den)

    # dynamics-facing operations -------------------------------------------
    def __call__(self, x):
        return evaluate(self, x)

    def compose(self, inner: "RatFun") -> "RatFun":
        return compose(self, inner)

    def derivative(self) -> "RatFun":
        return derivative(self)

    def wronskian(self) -> Poly:
        """``num' den - num den'``: its roots (with multiplicity e-1) are the finite critical points."""
        return self.num.derivative() * self.den - self.num * self.den.derivative()

    def value_at_infinity(self):
        dn, dd = self.num.degree, self.den.degree
        if dn > dd:
            return INF
        if dn < dd:
            return ZERO
        return self.num.lc / self.den.lc

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        return format_ratfun(self)


Z = RatFun(Poly([0, 1]))


def _needs_parens(p: Poly) -> bool:
    nz = [c for c in p.coeffs if c]
    if len(nz) > 1:
        return True
    c = nz[0]
    return bool(c.re and c.im)


def format_ratfun(f: RatFun) -> str:
    """Printer used for reports; output reparses to the same canonical function."""
    if f.den.degree == 0:
        return format_poly(f.num)
    n, d = format_poly(f.num), format_poly(f.den)
    if _needs_parens(f.num):
        n = f"({n})"
    if _needs_parens(f.den) or "/" in d or "*" in d or d.startswith("-"):
        d = f"({d})"
    return f"{n}/{d}"


def compose(outer: RatFun, inner: RatFun) -> RatFun:
    """``outer(inner(z))`` via homogenization: exact and canonical."""
    d = outer.degree
    num = outer.num.homogenize(inner.num, inner.den, d)
    den = outer.den.homogenize(inner.num, inner.den, d)
    return RatFun(num, den)


def iterate(f: RatFun, n: int) -> RatFun:
    if n < 1:
        raise ValueError("iterate needs n >= 1")
    g = f
    for _ in range(n - 1):
        g = compose(f, g)
    return g


def equals(f: RatFun, g: RatFun) -> bool:
    """Cross-multiplied identity ``num_f den_g == num_g den_f``."""
    return f.num * g.den == g.num * f.den


def derivative(f: RatFun) -> RatFun:
    return RatFun(f.wronskian(), f.den * f.den)


def moebius_inverse(m: RatFun) -> RatFun:
    if m.degree != 1:
        raise ValueError("Moebius map must have degree 1")
    a, b = m.num[1], m.num[0]
    c, d = m.den[1], m.den[0]
    return RatFun(Poly([-b, d]), Poly([a, -c]))


def moebius_conjugate(f: RatFun, m: RatFun) -> RatFun:
    """``m^-1 o f o m``."""
    return compose(moebius_inverse(m), compose(f, m))


# evaluation -------------------------------------------------------------------

def evaluate(f: RatFun, p):
    """Evaluate at a sphere point.

    Exact input gives exact output; approximate input (``ApproxPoint``, ``Ball``,
    python/mpmath complex) gives an :class:`ApproxPoint` with propagated radius.
    """
    if p is INF:
        return f.value_at_infinity()
    if isinstance(p, (int, QI)) or type(p).__name__ in ("mpq", "Fraction"):
        p = as_qi(p)
        dv = f.den(p)
        if not dv:
            return INF
        return f.num(p) / dv
    ball = Ball.of(p)
    prec = p.prec if isinstance(p, ApproxPoint) else mpmath.mp.prec
    with mpmath.workprec(max(prec, 53)):
        nv = _horner_ball(f.num, ball)
        dv = _horner_ball(f.den, ball)
        if dv.contains_zero():
            if nv.contains_zero():
                raise ArithmeticError("evaluation enclosure too wide")
            inv = (dv / nv)
            if abs(inv.c) <= inv.r:
                return INF
            out = inv.inverse()
        else:
            out = nv / dv
        return ApproxPoint(out.c, out.r, prec)


def _horner_ball(p: Poly, x: Ball) -> Ball:
    acc = Ball(0, 0)
    for c in reversed(p.coeffs):
        acc = acc * x + Ball.of(c)
    return acc


def complex_eval(f: RatFun, z: complex) -> complex:
    """Plain floating-point evaluation (no enclosure)."""
    n = 0j
    for c in reversed(f.num.coeffs):
        n = n * z + complex(c)
    d = 0j
    for c in reversed(f.den.coeffs):
        d = d * z + complex(c)
    return n / d if d != 0 else complex("inf")


def local_degree(f: RatFun, p) -> int:
    """Order of vanishing of ``f(w) - f(p)`` at ``w = p`` for an exact point ``p``.

    Infinity in the source is handled by precomposing with ``1/z``; infinity as
    a value by looking at the pole order.
    """
    if f.is_const():
        raise ValueError("local degree of a constant function")
    if p is INF:
        g = compose(f, RatFun(Poly([1]), Poly([0, 1])))
        return local_degree(g, ZERO)
    p = as_qi(p)
    v = evaluate(f, p)
    if v is INF:
        return f.den.order_at(p)
    return (f.num - f.den * v).order_at(p)
