"""Repelling periodic points, Poincaré linearizers and the parametrization identity.

For a repelling fixed point ``z0`` of ``F`` with multiplier ``lam`` the linearizer
``P(z) = z0 + z + c2 z^2 + ...`` solves ``P(lam z) = F(P(z))``.  Coefficients come
from matching powers (see :func:`semiconj.kernels.poincare_coeffs`); outside the
series disk ``P(z) = F^k(P(z / lam^k))``.

For a primitive triple the check is: pick ``z0`` periodic for ``A`` whose orbit
avoids critical values of ``X`` and over which ``B`` separates fibers, pass to
the iterate ``m = n l`` fixing every point ``z_i`` of ``X^-1{z0}``, and compare
``P_{A^m, z0}(z)`` with ``X(P_{B^m, z_i}(z / X'(z_i)))``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import kernels
from .orbifold import fiber_over, ramification_portrait
from .permgroup import perm_order
from .ratfun import INF, QI, ApproxPoint, Poly, RatFun, evaluate, iterate, moebius_conjugate, same_point
from .ratfun.fibers import is_critical_value_exact
from .ratfun.points import Ball, format_point, point_to_json
from .ratfun.poly import poly_gcd
from .ratfun.rational import derivative, moebius_inverse
from .ratfun.roots import roots_as_points

log = logging.getLogger(__name__)

__all__ = [
    "FixedPointData",
    "PowerSeries",
    "AdmissiblePoint",
    "periodic_points",
    "find_admissible_periodic_point",
    "check_candidate",
    "taylor_coeffs",
    "poincare_series",
    "poincare_evaluate",
    "verify_parametrization_identity",
    "multiplier_equality_check",
    "grid_points",
]

DEGREE_BUDGET = 4096


# periodic points -------------------------------------------------------------------------

@dataclass(frozen=True)
class FixedPointData:
    point: object
    period: int
    multiplier: object  # QI (exact) or ApproxPoint
    repelling: bool
    multiplicity: int = 1

    def to_json(self) -> dict:
        return {
            "point": point_to_json(self.point),
            "period": self.period,
            "multiplier": point_to_json(self.multiplier),
            "repelling": self.repelling,
            "multiplicity": self.multiplicity,
        }


def _fix_poly(F: RatFun) -> Poly:
    return F.num - F.den * Poly([0, 1])


def _abs_bounds(v) -> tuple[float, float]:
    if isinstance(v, QI):
        a = math.sqrt(float(v.norm()))
        return a, a
    b = Ball.of(v)
    a = abs(b.c)
    return float(a - b.r), float(a + b.r)


def _infinity_period(f: RatFun, n: int) -> int | None:
    p = INF
    for k in range(1, n + 1):
        p = evaluate(f, p)
        if p is INF:
            return k
    return None


def periodic_points(f: RatFun, period: int, precision: int = 256) -> list[FixedPointData]:
    """Points of exact period ``period`` with multipliers of ``f^period``.

    Points of smaller period dividing ``period`` are removed exactly (gcd with
    the lower-period fixed-point polynomials).  Points whose ``|lam|`` cannot be
    compared with 1 at this precision are skipped with a log notice.
    """
    if period < 1:
        raise ValueError("period must be positive")
    if f.degree ** period > DEGREE_BUDGET:
        raise ValueError(f"deg f^{period} exceeds the budget {DEGREE_BUDGET}")
    F = iterate(f, period)
    R = _fix_poly(F)
    for k in range(1, period):
        if period % k:
            continue
        Pk = _fix_poly(iterate(f, k))
        g = poly_gcd(R, Pk)
        while g.degree > 0:
            R = R.exact_div(g)
            g = poly_gcd(R, Pk)
    dF = derivative(F)
    out = []
    with mpmath.workprec(precision):
        pts = roots_as_points(R, precision) if R.degree > 0 else []
        for p, m in pts:
            lam = evaluate(dF, p)
            out.append((p, lam, m))
        if _infinity_period(f, period) == period:
            G = moebius_conjugate(F, RatFun(Poly([1]), Poly([0, 1])))
            lam = evaluate(derivative(G), QI(0))
            out.append((INF, lam, 1))
    res = []
    for p, lam, m in out:
        lo, hi = _abs_bounds(lam)
        if lo > 1:
            rep = True
        elif hi <= 1 or (isinstance(lam, QI)):
            rep = False
        else:
            log.info("period-%d point %s skipped: |multiplier| not separated from 1", period, format_point(p))
            continue
        res.append(FixedPointData(p, period, lam, rep, m))
    return res


# admissible point selection ------------------------------------------------------------------

@dataclass
class AdmissiblePoint:
    z0: object
    period: int
    l: int
    fiber: list  # X^-1{z0}, canonical order
    rejected: list = field(default_factory=list)  # (candidate, reason)

    @property
    def iterate_order(self) -> int:
        return self.period * self.l

    def to_json(self) -> dict:
        return {
            "z0": point_to_json(self.z0),
            "period": self.period,
            "l": self.l,
            "iterate_order": self.iterate_order,
            "fiber": [point_to_json(p) for p in self.fiber],
            "rejected_candidates": [{"point": point_to_json(p), "reason": r} for p, r in self.rejected],
        }


class NoAdmissiblePointError(RuntimeError):
    def __init__(self, message, rejected):
        super().__init__(message)
        self.rejected = rejected


def _orbit(f: RatFun, p, n: int, precision: int) -> list:
    out = [p]
    with mpmath.workprec(precision):
        for _ in range(n - 1):
            out.append(evaluate(f, out[-1]))
    return out


def _fiber(X: RatFun, v, portrait, precision: int) -> list:
    if X.degree == 1:
        with mpmath.workprec(precision):
            return [evaluate(moebius_inverse(X), v)]
    return [p for p, _ in fiber_over(X, v, portrait, precision)]


def _is_critical_value(X: RatFun, v, portrait) -> bool:
    if X.degree == 1:
        return False
    if v is INF or isinstance(v, QI):
        return is_critical_value_exact(X, v)
    return any(same_point(v, c) for c in portrait.critical_values())


def _pairwise_distinct(pts) -> bool:
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if same_point(pts[i], pts[j]):
                return False
    return True


def check_candidate(t, z0, n: int, precision: int = 256, portrait=None):
    """``AdmissiblePoint`` for ``z0`` of period ``n`` under ``A``, or a rejection reason string."""
    A, B, X = t.A, t.B, t.X
    if portrait is None and X.degree >= 2:
        portrait = ramification_portrait(X, precision)
    orbit = _orbit(A, z0, n, precision)
    if any(p is INF for p in orbit):
        return "orbit meets infinity (linearizer chart not supported)"
    fibers = []
    for p in orbit:
        if _is_critical_value(X, p, portrait):
            return f"orbit point {format_point(p)} is a critical value of X"
        fib = _fiber(X, p, portrait, precision)
        if len(fib) != X.degree or not _pairwise_distinct(fib):
            return f"fiber of X over {format_point(p)} is not {X.degree} distinct points"
        with mpmath.workprec(precision):
            imgs = [evaluate(B, z) for z in fib]
        if not _pairwise_distinct(imgs):
            return f"B is not injective on the fiber over {format_point(p)}"
        fibers.append(fib)
    fib0 = fibers[0]
    # B^n permutes X^-1{z0}
    perm = []
    for z in fib0:
        w = z
        with mpmath.workprec(precision):
            for _ in range(n):
                w = evaluate(B, w)
        hits = [k for k, y in enumerate(fib0) if same_point(w, y)]
        if len(hits) != 1:
            return "could not certify the permutation of the fiber under B^n"
        perm.append(hits[0])
    if len(set(perm)) != len(perm):
        return "B^n does not permute the fiber"
    return AdmissiblePoint(z0, n, perm_order(tuple(perm)), fib0)


def _candidate_key(fp: FixedPointData):
    v = complex(fp.point)
    return (fp.period, round(abs(v), 12), round(math.atan2(v.imag, v.real), 12))


def find_admissible_periodic_point(t, max_period: int = 3, precision: int = 256) -> AdmissiblePoint:
    """First repelling periodic point of ``A`` (by period, modulus, argument) passing :func:`check_candidate`."""
    from .semiconjugacy import is_primitive, verify_semiconjugacy

    if not verify_semiconjugacy(t.A, t.B, t.X):
        raise ValueError("triple is not semiconjugate")
    if not is_primitive(t.X, t.B):
        raise ValueError("triple is not primitive")
    portrait = ramification_portrait(t.X, precision) if t.X.degree >= 2 else None
    rejected = []
    for n in range(1, max_period + 1):
        cands = []
        for fp in periodic_points(t.A, n, precision):
            if not fp.repelling:
                continue
            if fp.point is INF:
                rejected.append((INF, "infinity skipped (linearizer chart not supported)"))
                continue
            cands.append(fp)
        for fp in sorted(cands, key=_candidate_key):
            res = check_candidate(t, fp.point, n, precision, portrait)
            if isinstance(res, str):
                rejected.append((fp.point, res))
                log.info("candidate %s rejected: %s", format_point(fp.point), res)
                continue
            res.rejected = rejected
            return res
    raise NoAdmissiblePointError(f"no admissible periodic point up to period {max_period}", rejected)


# power series ---------------------------------------------------------------------------------

@dataclass
class PowerSeries:
    fixed_point: complex
    multiplier: complex
    coeffs: np.ndarray  # c[0] = z0, c[1] = 1, ..., c[order]
    order: int
    radius: float
    min_denominator: float
    residual: float = float("nan")
    truncation_bound: float = float("nan")

    def __call__(self, z):
        zs = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        out = kernels.series_eval(self.coeffs, self.fixed_point, zs)
        return out if np.ndim(z) else complex(out[0])

    def export(self) -> list:
        return [(n, float(c.real), float(c.imag)) for n, c in enumerate(self.coeffs)]

    def to_json(self) -> dict:
        return {
            "fixed_point": [self.fixed_point.real, self.fixed_point.imag],
            "multiplier": [self.multiplier.real, self.multiplier.imag],
            "order": self.order,
            "radius": self.radius,
            "residual": self.residual,
            "truncation_bound": self.truncation_bound,
            "coefficients": [[n, re, im] for n, re, im in self.export()],
        }


def _mp_taylor_shift(cs, a):
    """Coefficients of ``p(a + u)`` from those of ``p`` (mpmath values)."""
    cs = list(cs)
    n = len(cs)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            cs[k] += a * cs[k + 1]
    return cs


def taylor_coeffs(f: RatFun, z, order: int, precision: int = 256) -> np.ndarray:
    """Taylor coefficients ``a_0..a_order`` of ``f`` at a finite point."""
    with mpmath.workprec(precision):
        if isinstance(z, QI):
            a = z
            num = [c.to_mpc() for c in f.num.taylor_shift(a).coeffs]
            den = [c.to_mpc() for c in f.den.taylor_shift(a).coeffs]
        else:
            a = mpmath.mpc(z.value if isinstance(z, ApproxPoint) else z)
            num = _mp_taylor_shift([c.to_mpc() for c in f.num.coeffs], a)
            den = _mp_taylor_shift([c.to_mpc() for c in f.den.coeffs], a)
        if den[0] == 0:
            raise ValueError("Taylor expansion at a pole")
        out = []
        for k in range(order + 1):
            s = num[k] if k < len(num) else mpmath.mpc(0)
            for j in range(1, min(k, len(den) - 1) + 1):
                s -= den[j] * out[k - j]
            out.append(s / den[0])
        return np.array([complex(v) for v in out], dtype=np.complex128)


def _compose_series(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """``outer(inner(u) - inner(0))`` truncated; ``outer`` expanded at ``inner(0)``."""
    N = outer.size - 1
    h = inner.copy()
    h[0] = 0
    out = np.zeros(N + 1, dtype=np.complex128)
    out[0] = outer[0]
    pw = np.zeros(N + 1, dtype=np.complex128)
    pw[0] = 1
    for k in range(1, N + 1):
        pw = np.convolve(pw, h)[: N + 1]
        out += outer[k] * pw
    return out


def _iterate_taylor(f: RatFun, z0, m: int, order: int, precision: int) -> np.ndarray:
    """Taylor coefficients of ``f^m`` at ``z0``, composed along the orbit."""
    orbit = _orbit(f, z0, m, precision)
    acc = taylor_coeffs(f, orbit[0], order, precision)
    for p in orbit[1:]:
        acc = _compose_series(taylor_coeffs(f, p, order, precision), acc)
    return acc


def _complex_point(p) -> complex:
    if isinstance(p, ApproxPoint):
        return complex(p.value)
    return complex(p)


def grid_points(r: float, rays: int = 32, radii: int = 16) -> np.ndarray:
    """Deterministic evaluation grid: ``rays`` directions times ``radii`` equally spaced radii up to ``r``."""
    th = 2 * np.pi * np.arange(rays) / rays
    rs = r * np.arange(1, radii + 1) / radii
    return (rs[None, :] * np.exp(1j * th)[:, None]).ravel()


def poincare_series(f: RatFun, fp, order: int = 64, precision: int = 256, period: int = 1) -> PowerSeries:
    """Linearizer of ``f^period`` at the repelling point ``fp`` (FixedPointData or a point)."""
    z0 = fp.point if isinstance(fp, FixedPointData) else fp
    if z0 is INF:
        raise ValueError("conjugate by a Moebius map to move the fixed point off infinity")
    a = _iterate_taylor(f, z0, period, order, precision)
    lam = a[1]
    zc = _complex_point(z0)
    if abs(a[0] - zc) > 1e-8 * (1 + abs(zc)):
        raise ValueError(f"{format_point(z0)} is not fixed by the map")
    if not abs(lam) > 1:
        raise ValueError(f"multiplier {lam} is not repelling")
    c, den = kernels.poincare_coeffs(a, lam, order)
    c[0] = zc
    growth = max(abs(c[n]) ** (1.0 / n) for n in range(1, order + 1) if c[n] != 0)
    s = PowerSeries(
        fixed_point=zc,
        multiplier=complex(lam),
        coeffs=c,
        order=order,
        radius=1.0 / (4.0 * growth),
        min_denominator=float(min(abs(den[n]) for n in range(2, order + 1))) if order >= 2 else float("inf"),
    )
    # functional equation on the validation disk |z| <= radius / |lam|
    zs = grid_points(s.radius / abs(lam))
    lhs = s(lam * zs)
    rhs = _apply(f, s(zs), period)
    s.residual = float(np.max(np.abs(lhs - rhs)))
    rho = s.radius
    tail = sum(abs(c[n]) * rho ** n for n in range(max(2, order - 3), order + 1))
    s.truncation_bound = float(tail + 1e-15 * (1 + abs(zc)) * abs(lam))
    return s


def _coeff_arrays(f: RatFun):
    return (np.array(f.num.to_complex(), dtype=np.complex128),
            np.array(f.den.to_complex(), dtype=np.complex128))


def _apply(f: RatFun, zs: np.ndarray, times: int) -> np.ndarray:
    nc, dc = _coeff_arrays(f)
    w = np.asarray(zs, dtype=np.complex128)
    for _ in range(times):
        w = kernels.polyval(nc, w) / kernels.polyval(dc, w)
    return w


def poincare_evaluate(s: PowerSeries, f: RatFun, z, extension_steps: int | None = None, period: int = 1):
    """``P(z) = F^k(P(z / lam^k))`` with ``F = f^period``; ``k`` defaults to the smallest admissible."""
    zs = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    lam = s.multiplier
    if extension_steps is None:
        m = float(np.max(np.abs(zs))) if zs.size else 0.0
        k = 0
        while m / abs(lam) ** k > s.radius:
            k += 1
    else:
        k = extension_steps
    w = zs / lam ** k
    if np.max(np.abs(w), initial=0.0) > s.radius * (1 + 1e-12):
        raise ValueError("argument outside the validated series disk; increase extension_steps")
    out = _apply(f, s(w), k * period)
    return out if np.ndim(z) else complex(out[0])


# triple-level checks ---------------------------------------------------------------------------

@dataclass
class ParametrizationReport:
    admissible: AdmissiblePoint
    radius: float
    tol: float
    branches: int
    residuals: list
    derivative_errors: list
    distinct_at_zero: bool
    functional_residual: float
    grid_size: int

    @property
    def ok(self) -> bool:
        return (self.branches == len(self.admissible.fiber)
                and all(r < self.tol for r in self.residuals)
                and self.distinct_at_zero)

    def to_json(self) -> dict:
        return {
            "admissible_point": self.admissible.to_json(),
            "radius": self.radius,
            "tolerance": self.tol,
            "grid_points": self.grid_size,
            "branches": self.branches,
            "residuals": [
                {"branch": i + 1, "point": point_to_json(p), "max_residual": r, "derivative_error": e}
                for i, (p, r, e) in enumerate(zip(self.admissible.fiber, self.residuals, self.derivative_errors))
            ],
            "distinct_at_zero": self.distinct_at_zero,
            "base_functional_residual": self.functional_residual,
            "note": "finite-precision check on a closed disk",
            "verdict": "pass" if self.ok else "fail",
        }


def verify_parametrization_identity(t, r: float | None = None, tol: float = 1e-6, precision: int = 256,
                                    order: int = 64, max_period: int = 3) -> ParametrizationReport:
    """Compare ``P_{A^m, z0}(z)`` with ``X(P_{B^m, z_i}(alpha_i z))`` on a 32 x 16 polar grid."""
    adm = find_admissible_periodic_point(t, max_period, precision)
    m = adm.iterate_order
    sA = poincare_series(t.A, adm.z0, order, precision, period=m)
    radius = sA.radius if r is None else r
    zs = grid_points(radius)
    lhs = poincare_evaluate(sA, t.A, zs, period=m)
    dX = derivative(t.X)
    residuals, derrs, values0 = [], [], []
    h = 1e-5
    for zi in adm.fiber:
        sB = poincare_series(t.B, zi, order, precision, period=m)
        alpha = 1 / complex(evaluate(dX, zi) if isinstance(zi, QI) else _complex_point(evaluate(dX, zi)))
        rhs = _apply(t.X, poincare_evaluate(sB, t.B, alpha * zs, period=m), 1)
        residuals.append(float(np.max(np.abs(lhs - rhs))))
        pts = np.array([h, -h, 1j * h, -1j * h], dtype=np.complex128)
        vals = _apply(t.X, poincare_evaluate(sB, t.B, alpha * pts, period=m), 1)
        deriv = ((vals[0] - vals[1]) - 1j * (vals[2] - vals[3])) / (4 * h)
        derrs.append(float(abs(deriv - 1)))
        values0.append(sB(0.0))
    distinct = all(abs(values0[i] - values0[j]) > 1e-12
                   for i in range(len(values0)) for j in range(i + 1, len(values0)))
    return ParametrizationReport(adm, float(radius), tol, len(adm.fiber), residuals, derrs,
                                 distinct, sA.residual, int(zs.size))


def _orbit_multiplier(f: RatFun, p, m: int, precision: int):
    """``(f^m)'(p)`` as a ball, by the chain rule along the orbit."""
    df = derivative(f)
    with mpmath.workprec(precision):
        acc = Ball(1, 0)
        w = p
        for _ in range(m):
            acc = acc * Ball.of(evaluate(df, w))
            w = evaluate(f, w)
        return acc


@dataclass
class MultiplierReport:
    base_multiplier: complex
    fiber_multipliers: list
    max_deviation: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.max_deviation < self.tol

    def to_json(self) -> dict:
        return {
            "base_multiplier": [self.base_multiplier.real, self.base_multiplier.imag],
            "fiber_multipliers": [[v.real, v.imag] for v in self.fiber_multipliers],
            "max_deviation": self.max_deviation,
            "tolerance": self.tol,
            "verdict": "pass" if self.ok else "fail",
        }


def multiplier_equality_check(t, adm: AdmissiblePoint, tol: float = 1e-8, precision: int = 256) -> MultiplierReport:
    """``(B^m)'(z_i) == (A^m)'(z0)`` for every ``z_i`` in ``X^-1{z0}``, ``m = n l``."""
    m = adm.iterate_order
    base = complex(_orbit_multiplier(t.A, adm.z0, m, precision).c)
    fibs = [complex(_orbit_multiplier(t.B, z, m, precision).c) for z in adm.fiber]
    dev = max((abs(v - base) for v in fibs), default=0.0)
    return MultiplierReport(base, fibs, float(dev), tol)
