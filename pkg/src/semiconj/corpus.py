"""Example corpus: power, Chebyshev and Lattès triples.

The Lattès maps are x-coordinates of multiplication by ``n`` on the curve
``y^2 = x^3 + a x + b``, built from division polynomials:

    x(nP) = x - psi_{n-1} psi_{n+1} / psi_n^2.

``psi_n`` is carried as ``(p(x), e)`` meaning ``p(x) * y^e`` with ``e`` in {0, 1};
``y^2`` is replaced by ``x^3 + a x + b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ratfun import Poly, RatFun, compose, parse_expression
from .semiconjugacy import Triple

__all__ = [
    "division_polynomials",
    "lattes_map",
    "L2",
    "L3",
    "corpus_triples",
    "primitive_corpus",
    "negative_triples",
    "composed_chebyshev",
    "corpus_functions",
    "CorpusEntry",
]


def _mul(u, v, cubic: Poly):
    (p, e), (q, f) = u, v
    r = p * q
    e += f
    if e >= 2:
        r = r * cubic
        e -= 2
    return (r, e)


def _sub(u, v):
    (p, e), (q, f) = u, v
    if not p:
        return (-q, f)
    if not q:
        return (p, e)
    if e != f:
        raise ArithmeticError("mixed y-parity in division polynomial recurrence")
    return (p - q, e)


def _pow(u, n, cubic):
    r = (Poly.const(1), 0)
    for _ in range(n):
        r = _mul(r, u, cubic)
    return r


def division_polynomials(n: int, a=-1, b=0) -> list:
    """``psi_0 .. psi_n`` for ``y^2 = x^3 + a x + b`` as ``(poly, y_power)`` pairs."""
    a, b = Fraction(a), Fraction(b)
    x = Poly([0, 1])
    cubic = Poly([b, a, 0, 1])
    psi = [
        (Poly(), 0),
        (Poly.const(1), 0),
        (Poly.const(2), 1),
        (Poly([-a * a, 12 * b, 6 * a, 0, 3]), 0),
        (Poly([-4 * (8 * b * b + a ** 3), -16 * a * b, -20 * a * a, 80 * b, 20 * a, 0, 4]), 1),
    ]
    del x
    while len(psi) <= n:
        k = len(psi)
        m = k // 2
        if k % 2 == 1:
            t1 = _mul(psi[m + 2], _pow(psi[m], 3, cubic), cubic)
            t2 = _mul(psi[m - 1], _pow(psi[m + 1], 3, cubic), cubic)
            psi.append(_sub(t1, t2))
        else:
            t1 = _mul(psi[m + 2], _pow(psi[m - 1], 2, cubic), cubic)
            t2 = _mul(psi[m - 2], _pow(psi[m + 1], 2, cubic), cubic)
            diff = _sub(t1, t2)
            inner = _mul(psi[m], diff, cubic)
            # divide by 2y
            p, e = inner
            if e == 1:
                psi.append((p * Fraction(1, 2), 0))
            else:
                psi.append((p.exact_div(cubic) * Fraction(1, 2), 1))
    return psi[: n + 1]


def lattes_map(n: int, a=-1, b=0) -> RatFun:
    """x-coordinate of multiplication by ``n`` as a rational function of ``x``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    psi = division_polynomials(n + 1, a, b)
    cubic = Poly([Fraction(b), Fraction(a), 0, 1])
    x = Poly([0, 1])
    num_pair = _mul(psi[n - 1], psi[n + 1], cubic)
    den_pair = _mul(psi[n], psi[n], cubic)
    if num_pair[1] or den_pair[1]:
        raise ArithmeticError("odd y-power in x(nP)")
    den = den_pair[0]
    return RatFun(x * den - num_pair[0], den)


@lru_cache(maxsize=None)
def L2() -> RatFun:
    return lattes_map(2)


@lru_cache(maxsize=None)
def L3() -> RatFun:
    return lattes_map(3)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    triple: Triple
    primitive: bool
    note: str


@lru_cache(maxsize=None)
def corpus_triples() -> tuple[CorpusEntry, ...]:
    """The four primitive corpus triples; L2, L3 are rebuilt and re-verified here."""
    P = parse_expression
    l2, l3 = L2(), L3()
    if compose(l2, l3) != compose(l3, l2):
        raise AssertionError("division-polynomial Lattès maps do not commute")
    return (
        CorpusEntry("power", Triple(P("z^2"), P("z^2"), P("z"), "power"), True,
                    "A = B = z^2, X = z (deg X = 1, conjugacy)"),
        CorpusEntry("chebyshev", Triple(P("2*z^2-1"), P("z^2"), P("(z+1/z)/2"), "chebyshev"), True,
                    "T2 o X = X o z^2 with X = (z + 1/z)/2"),
        CorpusEntry("odd-lattes",
                    Triple(P("(z+1)^4/(16*z*(z-1)^2)"), l2, P("z^2"), "odd-lattes"), True,
                    "A'(z^2) = L2(z)^2 since L2 is odd"),
        CorpusEntry("lattes-commuting", Triple(l2, l2, l3, "lattes-commuting"), True,
                    "L2 o L3 = L3 o L2 on y^2 = x^3 - x"),
    )


def primitive_corpus() -> list[Triple]:
    return [e.triple for e in corpus_triples()]


def composed_chebyshev() -> Triple:
    """Chebyshev triple precomposed with ``W = z^2``: ``(T2, z^2, X(z^2))``, not primitive."""
    P = parse_expression
    return Triple(P("2*z^2-1"), P("z^2"), compose(P("(z+1/z)/2"), P("z^2")), "chebyshev-composed")


def negative_triples() -> list[tuple[str, RatFun, RatFun, RatFun]]:
    """Perturbed triples that must fail the exact identity."""
    P = parse_expression
    l2, l3 = L2(), L3()
    return [
        ("chebyshev-wrong-A", P("z^3"), P("z^2"), P("(z+1/z)/2")),
        ("chebyshev-shifted-A", P("2*z^2-1+1/1000"), P("z^2"), P("(z+1/z)/2")),
        ("lattes-perturbed-X", l2, l2, l3 + RatFun.const(Fraction(1, 7))),
    ]


def corpus_functions() -> dict[str, RatFun]:
    """Named single functions used by the orbifold and monodromy tables."""
    P = parse_expression
    return {
        "z^2": P("z^2"),
        "z^3": P("z^3"),
        "z^5": P("z^5"),
        "T2": P("2*z^2-1"),
        "T3": P("4*z^3-3*z"),
        "L2": L2(),
        "L3": L3(),
        "z^4+z": P("z^4+z"),
        "X_chebyshev": P("(z+1/z)/2"),
        "A_odd_lattes": P("(z+1)^4/(16*z*(z-1)^2)"),
    }
