"""Point-level checks on the fiber product ``L = {(z_1..z_d) : X(z_1) = ... = X(z_d)}``.

``L0`` is the part with pairwise distinct coordinates.  ``B`` acts coordinatewise;
for a primitive triple it should carry ``L0`` into itself, and the product map
``(z_i) -> (X(z_i))`` intertwines ``B`` with ``A`` acting on the diagonal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .ratfun import INF, QI, ApproxPoint, RatFun, evaluate, same_point
from .ratfun.fibers import exact_fiber, is_critical_value_exact
from .ratfun.points import Ball, point_key, point_to_json
from .semiconjugacy import _is_image_of_root, _sample_points, exceptional_polynomial, verify_semiconjugacy

log = logging.getLogger(__name__)

__all__ = [
    "FiberTuple",
    "sample_fiber_tuples",
    "verify_L0_invariance",
    "verify_product_diagram",
    "InvarianceReport",
    "DiagramReport",
]


@dataclass(frozen=True)
class FiberTuple:
    base_value: object
    coords: tuple
    distinct: bool

    def to_json(self) -> dict:
        return {
            "base_value": point_to_json(self.base_value),
            "coords": [point_to_json(p) for p in self.coords],
            "distinct": self.distinct,
        }


def sample_fiber_tuples(X: RatFun, t, precision: int = 256) -> FiberTuple:
    """The full fiber ``X^-1{t}`` as a tuple, points repeated by local degree, canonical order."""
    fib = sorted(exact_fiber(X, t, precision), key=lambda pe: point_key(pe[0]))
    coords = tuple(p for p, m in fib for _ in range(m))
    return FiberTuple(t, coords, all(m == 1 for _, m in fib))


def _pairwise_distinct(pts) -> bool:
    return all(not same_point(pts[i], pts[j]) for i in range(len(pts)) for j in range(i + 1, len(pts)))


@dataclass
class InvarianceReport:
    samples: int
    passed: int = 0
    rejected_critical: int = 0
    excluded: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "passed": self.passed,
            "rejected_critical_values": self.rejected_critical,
            "excluded_points": [str(p) for p in self.excluded],
            "failures": [{"t": str(p), "reason": r} for p, r in self.failures],
            "verdict": "pass" if self.ok else "fail",
        }


def verify_L0_invariance(B: RatFun, X: RatFun, samples: int = 100, seed: int = 0, precision: int = 256,
                         A: RatFun | None = None) -> InvarianceReport:
    """For ``samples`` admissible exact ``t``: ``B`` maps the fiber tuple over ``t`` into ``L0``.

    The image tuple must have a common X-value (equal to ``A(t)`` when ``A`` is
    given) and pairwise distinct coordinates.  Critical values of ``X`` are
    redrawn; distinctness failures over the finite exceptional set are flagged
    as excluded rather than failed.
    """
    rng = np.random.default_rng(seed)
    rep = InvarianceReport(samples)
    E = None
    done = 0
    while done < samples:
        t = next(_sample_points(rng, 1))
        if is_critical_value_exact(X, t):
            rep.rejected_critical += 1
            log.info("t = %s rejected: critical value of X", t)
            continue
        done += 1
        ft = sample_fiber_tuples(X, t, precision)
        with mpmath.workprec(precision):
            imgs = [evaluate(B, z) for z in ft.coords]
            xv = [evaluate(X, w) for w in imgs]
            target = evaluate(A, t) if A is not None else xv[0]
        if not all(same_point(v, target) for v in xv):
            rep.failures.append((t, "image tuple has no common X-value"))
            continue
        if not _pairwise_distinct(imgs):
            if E is None:
                E = exceptional_polynomial(X, B)
            if _is_image_of_root(X, E, t):
                rep.excluded.append(t)
            else:
                rep.failures.append((t, "image tuple leaves L0"))
            continue
        rep.passed += 1
    return rep


@dataclass
class DiagramReport:
    samples: int
    max_residual: float
    diagonal_ok: bool
    exact_identity: bool
    orbit_residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.exact_identity and self.diagonal_ok and self.max_residual < self.tol and self.orbit_residual < self.tol

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "max_commutation_residual": self.max_residual,
            "orbit_residual": self.orbit_residual,
            "diagonal_preserved": self.diagonal_ok,
            "exact_identity": self.exact_identity,
            "tolerance": self.tol,
            "verdict": "pass" if self.ok else "fail",
        }


def _residual(u, v) -> float:
    """Relative distance of two balls (or chordal-style 0 when both are infinity)."""
    if u is INF or v is INF:
        return 0.0 if u is v else float("inf")
    a, b = Ball.of(u), Ball.of(v)
    return float((abs(a.c - b.c) + a.r + b.r) / max(1, abs(a.c)))


def verify_product_diagram(t, samples: int = 100, seed: int = 0, precision: int = 256,
                           tol: float = 1e-10, orbit_steps: int = 5) -> DiagramReport:
    """``X(B(p_i)) = A(X(p_i))`` on random ``d``-tuples, diagonal invariance, and ``X B^k = A^k X`` for ``k <= orbit_steps``."""
    A, B, X = t.A, t.B, t.X
    exact = verify_semiconjugacy(A, B, X)
    if not exact:
        raise ValueError("triple is not semiconjugate")
    d = X.degree
    rng = np.random.default_rng(seed)
    worst = 0.0
    orbit_worst = 0.0
    with mpmath.workprec(precision):
        for _ in range(samples):
            pts = rng.uniform(-2, 2, size=(d, 2))
            for re, im in pts:
                p = ApproxPoint(mpmath.mpc(re, im), mpmath.mpf(0), precision)
                worst = max(worst, _residual(evaluate(X, evaluate(B, p)), evaluate(A, evaluate(X, p))))
            # orbit compatibility on the first coordinate
            p = ApproxPoint(mpmath.mpc(*pts[0]), mpmath.mpf(0), precision)
            u, v = p, evaluate(X, p)
            for _ in range(orbit_steps):
                u = evaluate(B, u) if u is not INF else evaluate(B, INF)
                v = evaluate(A, v) if v is not INF else evaluate(A, INF)
                orbit_worst = max(orbit_worst, _residual(evaluate(X, u), v))
        diag_ok = True
        for c in (QI(0), QI(1, 1), QI(-3, 2), INF):
            img = [evaluate(A, c) for _ in range(d)]
            diag_ok &= all(same_point(img[0], w) for w in img)
    return DiagramReport(samples, worst, diag_ok, exact, orbit_worst, tol)
