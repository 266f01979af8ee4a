"""Gaussian rationals: exact scalars a + b*i with a, b in Q."""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

__all__ = ["QI", "as_qi", "ZERO", "ONE", "I"]


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class QI:
    """Immutable Gaussian rational.

    Both parts are ``gmpy2.mpq`` values, which are always kept in lowest terms
    with a positive denominator.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI is immutable")

    @classmethod
    def _make(cls, re: mpq, im: mpq) -> "QI":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QI):
            other = as_qi(other)
        return QI._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, QI):
            other = as_qi(other)
        return QI._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_qi(other) - self

    def __neg__(self):
        return QI._make(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, QI):
            other = as_qi(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return QI._make(a * c, b)
            return QI._make(a * c, a * d)
        if not d:
            return QI._make(a * c, b * c)
        return QI._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "QI":
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("inverse of zero")
            return QI._make(1 / a, b)
        n = a * a + b * b
        return QI._make(a / n, -b / n)

    def __truediv__(self, other):
        if not isinstance(other, QI):
            other = as_qi(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_qi(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QI":
        return QI._make(self.re, -self.im)

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    # comparison -------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        try:
            other = as_qi(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    def is_real(self) -> bool:
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_mpc(self):
        import mpmath

        return mpmath.mpc(_q_to_mpf(self.re), _q_to_mpf(self.im))

    # printing ---------------------------------------------------------
    def __repr__(self):
        return f"QI({self})"

    def __str__(self):
        return format_qi(self)


def _q_to_mpf(q: mpq):
    import mpmath

    if q.denominator == 1:
        return mpmath.mpf(int(q.numerator))
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def _fmt_q(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_qi(c: QI) -> str:
    """Print in the expression grammar: ``3/4``, ``-i``, ``1/2+3*i``."""
    re, im = c.re, c.im
    if not im:
        return _fmt_q(re)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{_fmt_q(im)}*i"
    if not re:
        return ims
    if ims.startswith("-"):
        return f"{_fmt_q(re)}{ims}"
    return f"{_fmt_q(re)}+{ims}"


def as_qi(x) -> QI:
    if isinstance(x, QI):
        return x
    if isinstance(x, complex):
        return QI(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, (int, Fraction, float)) or type(x).__name__ == "mpq":
        return QI(x, 0)
    raise TypeError(f"cannot convert {type(x).__name__} to a Gaussian rational")


ZERO = QI(0)
ONE = QI(1)
I = QI(0, 1)
