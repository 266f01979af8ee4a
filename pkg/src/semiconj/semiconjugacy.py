"""Semiconjugacy ``A o X = X o B``: exact verification, primitivity and reduction.

A solution is primitive when ``X`` and ``B`` generate C(z).  The degree
``[C(z) : C(X, B)]`` equals the ``w``-degree of

    g(w; z) = gcd( num(X(w) - X(z)), num(B(w) - B(z)) )   over Q(i)(z),

computed exactly with subresultants.  When it exceeds one, the coefficients of
``g`` (made monic in ``w``) are rational functions of a Lüroth generator ``W``
of C(X, B), which lets us factor ``X = X~ o W`` and ``B = B~ o W`` and pass to
the smaller solution ``(A, W o B~, X~)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .ratfun import INF, QI, Poly, RatFun, compose, evaluate, poly_gcd, same_point
from .ratfun.fibers import exact_fiber, fiber_polynomial, is_critical_value_exact
from .ratfun.linalg import nullspace
from .ratfun.scalar import ONE, ZERO
from .ratfun.subres import resultant, subresultant_gcd

log = logging.getLogger(__name__)

__all__ = [
    "Triple",
    "ReductionStep",
    "NotSemiconjugateError",
    "verify_semiconjugacy",
    "fiber_field_degree",
    "fiber_gcd",
    "is_primitive",
    "luroth_generator",
    "decompose_through",
    "reduce_to_primitive",
    "generic_injectivity_check",
    "InjectivityReport",
]


class NotSemiconjugateError(ValueError):
    pass


def verify_semiconjugacy(A: RatFun, B: RatFun, X: RatFun) -> bool:
    """Exact test of ``A o X == X o B`` (commutativity when ``B == A``)."""
    if A.is_const() or B.is_const() or X.is_const():
        raise ValueError("semiconjugacy is defined for nonconstant functions")
    return compose(A, X) == compose(X, B)


@dataclass(frozen=True)
class Triple:
    """A verified solution of ``A o X = X o B``."""

    A: RatFun
    B: RatFun
    X: RatFun
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.A.degree < 2 or self.B.degree < 2:
            raise ValueError("A and B must have degree at least two")
        if self.X.degree < 1:
            raise ValueError("X must be nonconstant")
        if not verify_semiconjugacy(self.A, self.B, self.X):
            raise NotSemiconjugateError(f"A o X != X o B for {self.name or 'triple'}")

    def describe(self) -> dict:
        return {"A": str(self.A), "B": str(self.B), "X": str(self.X)}


@dataclass(frozen=True)
class ReductionStep:
    W: RatFun
    X_tilde: RatFun
    B_tilde: RatFun
    new_triple: Triple


# fiber-field degree -------------------------------------------------------------

def _difference_bipoly(f: RatFun) -> list:
    """Coefficients in ``w`` of ``num(w) den(z) - num(z) den(w)``, each a Poly in ``z``."""
    n = max(f.num.degree, f.den.degree) + 1
    return [f.den * f.num[k] - f.num * f.den[k] for k in range(n)]


def fiber_gcd(X: RatFun, B: RatFun) -> list:
    """``g(w; z)`` as a primitive bivariate polynomial (list of Poly in ``z``)."""
    return subresultant_gcd(_difference_bipoly(X), _difference_bipoly(B))


def fiber_field_degree(X: RatFun, B: RatFun) -> int:
    """``[C(z) : C(X, B)]``, i.e. the generic number of ``w`` with ``X(w) = X(z)`` and ``B(w) = B(z)``."""
    if X.is_const() or B.is_const():
        raise ValueError("fiber_field_degree needs nonconstant functions")
    return len(fiber_gcd(X, B)) - 1


def is_primitive(X: RatFun, B: RatFun) -> bool:
    return fiber_field_degree(X, B) == 1


# Lüroth generator -----------------------------------------------------------------

def _coeff_key(f: RatFun):
    def flat(p):
        return tuple((c.re, c.im) for c in p.coeffs)

    return (f.num.degree + f.den.degree, flat(f.num), flat(f.den))


def _cross_ratio_map(a, b, c) -> RatFun | None:
    """Moebius map sending ``a, b, c`` to ``0, 1, oo`` (None unless distinct)."""
    pts = [a, b, c]
    for i in range(3):
        for j in range(i + 1, 3):
            if same_point(pts[i], pts[j]):
                return None
    z = Poly([0, 1])
    one = Poly.const(ONE)
    # (z - a)(b - c) / ((z - c)(b - a)), dropping factors containing oo
    if a is INF:
        num, den = one * (b - c), z - one * c
    elif b is INF:
        num, den = z - one * a, z - one * c
    elif c is INF:
        num, den = z - one * a, one * (b - a)
    else:
        num, den = (z - one * a) * (b - c), (z - one * c) * (b - a)
    return RatFun(num, den)


def normalize_generator(W: RatFun) -> RatFun:
    """Post-compose with a Moebius map so that ``W(0)=0, W(1)=1, W(oo)=oo`` when possible."""
    m = _cross_ratio_map(evaluate(W, ZERO), evaluate(W, ONE), evaluate(W, INF))
    if m is None:
        return W
    return compose(m, W)


def luroth_generator(X: RatFun, B: RatFun) -> RatFun:
    """A generator ``W`` of C(X, B), normalized to be reproducible.

    Raises ``ValueError`` if ``X, B`` already generate C(z).
    """
    g = fiber_gcd(X, B)
    k = len(g) - 1
    if k <= 1:
        raise ValueError("X and B already generate C(z); no proper Lüroth generator")
    lead = g[-1]
    coeffs = [RatFun(g[j], lead) for j in range(k)]
    candidates = []
    for i in range(k + 1):
        ci = coeffs[i] if i < k else RatFun.const(1)
        if not ci.num:
            continue
        for j in range(k + 1):
            if i == j:
                continue
            cj = coeffs[j] if j < k else RatFun.const(1)
            if not cj.num:
                continue
            r = ci / cj
            if not r.is_const():
                candidates.append(r)
    if not candidates:
        raise ArithmeticError("no nonconstant coefficient ratio in the fiber gcd")
    W = min(candidates, key=_coeff_key)
    W = normalize_generator(W)
    if W.degree != k:
        raise ArithmeticError(f"Lüroth candidate has degree {W.degree}, expected {k}")
    return W


# decomposition -----------------------------------------------------------------------

def decompose_through(f: RatFun, W: RatFun) -> RatFun | None:
    """Return ``f~`` with ``f = f~ o W`` exactly, or ``None`` when there is none.

    Writes ``f~ = P/Q`` with unknown coefficients of degree ``deg f / deg W`` and
    solves ``num_f * Q^(num_W, den_W) = den_f * P^(num_W, den_W)`` (homogenized
    forms) by exact elimination.
    """
    dW = W.degree
    if dW < 1 or f.degree % dW != 0:
        return None
    m = f.degree // dW
    basis = [W.num ** k * W.den ** (m - k) for k in range(m + 1)]
    cols = [f.den * b for b in basis] + [-(f.num * b) for b in basis]
    nrows = max(c.degree for c in cols) + 1
    rows = [[c[r] for c in cols] for r in range(nrows)]
    for v in nullspace(rows, 2 * (m + 1)):
        P, Q = Poly(v[: m + 1]), Poly(v[m + 1:])
        if not Q:
            continue
        cand = RatFun(P, Q)
        if cand.degree == m and compose(cand, W) == f:
            return cand
    return None


def reduce_to_primitive(t: Triple) -> list[ReductionStep]:
    """Replace ``(A, B, X)`` by ``(A, W o B~, X~)`` until ``C(X, B) = C(z)`` or ``deg X = 1``."""
    steps: list[ReductionStep] = []
    cur = t
    while cur.X.degree > 1 and fiber_field_degree(cur.X, cur.B) > 1:
        W = luroth_generator(cur.X, cur.B)
        Xt = decompose_through(cur.X, W)
        Bt = decompose_through(cur.B, W)
        if Xt is None or Bt is None:
            raise ArithmeticError("Lüroth generator does not factor X and B")
        new = Triple(cur.A, compose(W, Bt), Xt, name=f"{cur.name}~" if cur.name else "")
        if new.X.degree >= cur.X.degree:
            raise ArithmeticError("reduction did not lower deg X")
        steps.append(ReductionStep(W, Xt, Bt, new))
        cur = new
    return steps


# injectivity on generic fibers ---------------------------------------------------------

@dataclass
class InjectivityReport:
    samples: int
    passed: int
    rejected_critical: int
    excluded_violations: list = field(default_factory=list)
    unexpected_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.unexpected_violations

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "passed": self.passed,
            "rejected_critical_values": self.rejected_critical,
            "violations_at_excluded_points": [str(p) for p in self.excluded_violations],
            "unexpected_violations": [str(p) for p in self.unexpected_violations],
            "verdict": "pass" if self.ok else "fail",
        }


def exceptional_polynomial(X: RatFun, B: RatFun) -> Poly:
    """``E(z)``: zero exactly where some ``w != z`` has ``X(w) = X(z)`` and ``B(w) = B(z)``.

    Removes the diagonal factor ``w - z`` from both difference polynomials and
    takes the resultant in ``w``.
    """
    def strip_diagonal(F):
        # synthetic division by (w - z) with coefficients in Q(i)[z]
        z = Poly([0, 1])
        n = len(F) - 1
        q = [None] * n
        acc = Poly()
        for k in range(n, 0, -1):
            acc = acc * z + F[k]
            q[k - 1] = acc
        if acc * z + F[0]:
            raise ArithmeticError("difference polynomial not divisible by w - z")
        return q

    return resultant(strip_diagonal(_difference_bipoly(X)), strip_diagonal(_difference_bipoly(B)))


def _sample_points(rng: np.random.Generator, count: int):
    for _ in range(count):
        a, b = rng.integers(-60, 61, size=2)
        c, d = rng.integers(1, 24, size=2)
        yield QI(Fraction(int(a), int(c)), Fraction(int(b), int(d)))


def _distinct_images(B: RatFun, pts, precision: int) -> bool:
    import mpmath

    with mpmath.workprec(precision):
        vals = []
        for p, _ in pts:
            v = evaluate(B, p)
            vals.append(v)
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if same_point(vals[i], vals[j]):
                    return False
    return True


def generic_injectivity_check(X: RatFun, B: RatFun, sample_count: int = 50, seed: int = 0,
                              precision: int = 256, points=None) -> InjectivityReport:
    """Check ``|B(X^-1{z0})| = deg X`` at sampled exact points ``z0``.

    Violations are classified exactly: a point is "excluded" when it is the
    X-image of a root of :func:`exceptional_polynomial`.
    """
    if not is_primitive(X, B):
        raise ValueError("generic_injectivity_check requires a primitive pair (X, B)")
    rng = np.random.default_rng(seed)
    pts = list(points) if points is not None else list(_sample_points(rng, sample_count))
    rep = InjectivityReport(samples=len(pts), passed=0, rejected_critical=0)
    E = None
    for z0 in pts:
        if is_critical_value_exact(X, z0):
            rep.rejected_critical += 1
            log.debug("sample %s rejected: critical value of X", z0)
            continue
        fib = exact_fiber(X, z0, precision)
        if _distinct_images(B, fib, precision):
            rep.passed += 1
            continue
        if E is None:
            E = exceptional_polynomial(X, B)
        if z0 is not INF and _is_image_of_root(X, E, z0):
            rep.excluded_violations.append(z0)
        else:
            rep.unexpected_violations.append(z0)
    return rep


def _is_image_of_root(X: RatFun, E: Poly, z0) -> bool:
    return poly_gcd(E, fiber_polynomial(X, z0)).degree > 0
