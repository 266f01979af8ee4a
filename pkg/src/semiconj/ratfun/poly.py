"""Dense univariate polynomials over the Gaussian rationals."""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalar import ONE, ZERO, QI, as_qi, format_qi

__all__ = ["Poly", "poly_gcd", "squarefree_decomposition"]


class Poly:
    """Polynomial with :class:`QI` coefficients, constant term first.

    Trailing zeros are stripped on construction, so ``degree`` is the index of
    the last nonzero coefficient (``-1`` for the zero polynomial).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, QI) else as_qi(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, cs: list) -> "Poly":
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    @classmethod
    def monomial(cls, n: int, c=ONE) -> "Poly":
        return cls._raw([ZERO] * n + [as_qi(c)])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls._raw([as_qi(c)])

    # basic properties ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> QI:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> QI:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, QI)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # ring operations -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_qi(other)
            if not c:
                return Poly._raw([])
            return Poly._raw([x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw([])
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly.const(ONE), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        return self * as_qi(c)

    def shift(self, k: int) -> "Poly":
        """Multiply by ``z**k``."""
        if not self.coeffs:
            return self
        return Poly._raw([ZERO] * k + list(self.coeffs))

    def divmod(self, other: "Poly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Poly._raw([]), self
        inv = other.lc.inverse()
        q = [ZERO] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = c * inv
            q[k - db] = c
            for j in range(db + 1):
                if bc[j]:
                    rem[k - db + j] = rem[k - db + j] - c * bc[j]
        return Poly._raw(q), Poly._raw(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.lc
        if lc == ONE:
            return self
        inv = lc.inverse()
        return Poly._raw([c * inv for c in self.coeffs])

    # calculus and evaluation --------------------------------------------
    def derivative(self) -> "Poly":
        return Poly._raw([c * k for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; works for any ring element supporting ``+``/``*``."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly._raw([])
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.const(c)
        return acc

    def homogenize(self, x: "Poly", y: "Poly", d: int) -> "Poly":
        """Return sum c_k x^k y^(d-k), i.e. ``y^d * self(x/y)`` with formal degree ``d``."""
        if self.degree > d:
            raise ValueError("formal degree smaller than polynomial degree")
        xp = [Poly.const(ONE)]
        yp = [Poly.const(ONE)]
        for _ in range(d):
            xp.append(xp[-1] * x)
            yp.append(yp[-1] * y)
        acc = Poly._raw([])
        for k, c in enumerate(self.coeffs):
            if c:
                acc = acc + (xp[k] * yp[d - k]) * c
        return acc

    def reverse(self, d: int | None = None) -> "Poly":
        """``z^d * p(1/z)``; ``d`` defaults to the degree."""
        if d is None:
            d = self.degree
        cs = list(self.coeffs) + [ZERO] * (d + 1 - len(self.coeffs))
        return Poly(reversed(cs))

    def valuation(self) -> int:
        """Order of vanishing at 0 (infinite for zero, reported as -1)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1

    def taylor_shift(self, a) -> "Poly":
        """Return ``p(z + a)``."""
        a = as_qi(a)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] = cs[j] + a * cs[j + 1]
        return Poly._raw(cs)

    def order_at(self, a) -> int:
        """Multiplicity of ``a`` as a root."""
        if not self.coeffs:
            raise ValueError("zero polynomial vanishes to infinite order")
        cs = self.taylor_shift(a).coeffs
        for k, c in enumerate(cs):
            if c:
                return k
        return len(cs)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coeffs)

    def to_complex(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]

    # printing --------------------------------------------------------------
    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def _term(c: QI, k: int) -> str:
    mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
    if k == 0:
        return format_qi(c)
    if c == ONE:
        return mono
    if c == -ONE:
        return "-" + mono
    if c.re and c.im:
        return f"({format_qi(c)})*{mono}"
    return f"{format_qi(c)}*{mono}"


def format_poly(p: Poly, var: str = "z") -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        t = _term(c, k)
        if parts and not t.startswith("-"):
            parts.append("+" + t)
        else:
            parts.append(t)
    s = "".join(parts)
    return s if var == "z" else s.replace("z", var)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: Poly) -> dict[int, Poly]:
    """Yun's algorithm: ``p = lc * prod(q_m ** m)`` with monic, coprime, squarefree ``q_m``.

    Returns ``{m: q_m}`` for the nonconstant factors only.
    """
    if not p:
        raise ValueError("zero polynomial has no squarefree decomposition")
    out: dict[int, Poly] = {}
    if p.degree < 1:
        return out
    p = p.monic()
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    m = 1
    d = c - b.derivative()
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out[m] = g
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        m += 1
    return out
