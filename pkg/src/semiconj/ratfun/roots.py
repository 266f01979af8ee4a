"""Certified root isolation for exact polynomials.

Multiplicities come from an exact squarefree decomposition; positions come
from Aberth iteration in double precision, Newton polishing at the requested
precision and an inclusion disk ``n |q(z)| / |q'(z)|`` per simple root.
Disks of all roots are checked to be pairwise disjoint, so every disk holds
exactly one root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .. import kernels
from .points import ApproxPoint, Ball
from .poly import Poly, squarefree_decomposition
from .scalar import QI

__all__ = ["ApproxRoot", "RootPrecisionError", "roots_with_multiplicity", "roots_as_points",
           "recognize_gaussian_rational", "simple_roots"]


class RootPrecisionError(ArithmeticError):
    """Raised when roots cannot be separated at the requested precision."""

    def __init__(self, message, achieved_radius=None):
        super().__init__(message)
        self.achieved_radius = achieved_radius


@dataclass(frozen=True)
class ApproxRoot:
    value: mpmath.mpc
    multiplicity: int
    error_radius: mpmath.mpf
    prec: int = 256
    factor: Poly | None = None

    def point(self) -> ApproxPoint:
        return ApproxPoint(self.value, self.error_radius, self.prec, self.factor)


def _initial_points(coeffs: np.ndarray, seed: int) -> np.ndarray:
    n = coeffs.size - 1
    lc = abs(coeffs[-1])
    bound = 1.0 + max(abs(c) / lc for c in coeffs[:-1])
    # a tighter (Fujiwara-type) radius keeps the start circle near the roots
    fuji = 2.0 * max(
        (abs(coeffs[n - k]) / lc) ** (1.0 / k) for k in range(1, n + 1)
    )
    radius = min(bound, fuji) if fuji > 0 else 1.0
    rng = np.random.default_rng(seed)
    jitter = rng.uniform(-0.25, 0.25, n)
    ang = 2 * np.pi * (np.arange(n) + jitter) / n + 0.4
    return radius * np.exp(1j * ang) * rng.uniform(0.9, 1.1, n)


def _mp_horner(cs, z):
    p = mpmath.mpc(0)
    dp = mpmath.mpc(0)
    for c in reversed(cs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _ball_horner(cs: tuple, z: Ball):
    p = Ball(0)
    dp = Ball(0)
    for c in reversed(cs):
        dp = dp * z + p
        p = p * z + Ball.of(c)
    return p, dp


def simple_roots(q: Poly, precision: int = 256, seed: int = 0) -> list[tuple[mpmath.mpc, mpmath.mpf]]:
    """Certified (center, radius) for every root of the squarefree polynomial ``q``."""
    n = q.degree
    if n < 1:
        return []
    if n == 1:
        r = -q[0] / q[1]
        with mpmath.workprec(precision):
            return [(r.to_mpc(), mpmath.mpf(0))]
    cplx = np.array(q.to_complex(), dtype=np.complex128)
    z0 = _initial_points(cplx, seed)
    approx, iters = kernels.aberth(cplx, z0, 500, 1e-14)
    with mpmath.workprec(precision + 32):
        mcs = [c.to_mpc() for c in q.coeffs]
        if iters < 0 or not np.all(np.isfinite(approx)):
            approx = [complex(v) for v in mpmath.polyroots(list(reversed(mcs)), maxsteps=400, extraprec=precision)]
        out = []
        target = mpmath.ldexp(mpmath.mpf(1), -precision)
        for z in approx:
            z = mpmath.mpc(z)
            for _ in range(200):
                p, dp = _mp_horner(mcs, z)
                if dp == 0:
                    break
                delta = p / dp
                z -= delta
                if abs(delta) <= target * max(1, abs(z)):
                    break
            out.append(z)
        certified = []
        for z in out:
            p, dp = _ball_horner(q.coeffs, Ball(z, 0))
            denom = abs(dp.c) - dp.r
            if denom <= 0:
                raise RootPrecisionError("derivative enclosure contains zero", None)
            rad = n * (abs(p.c) + p.r) / denom
            certified.append((z, rad))
    limit = mpmath.ldexp(mpmath.mpf(1), -(precision // 2))
    for z, rad in certified:
        if rad > limit * max(1, abs(z)):
            raise RootPrecisionError(
                f"root near {mpmath.nstr(z, 8)} only isolated to radius {mpmath.nstr(rad, 3)}",
                float(rad),
            )
    _check_disjoint(certified)
    return certified


def _check_disjoint(disks):
    for i in range(len(disks)):
        zi, ri = disks[i]
        for j in range(i + 1, len(disks)):
            zj, rj = disks[j]
            if abs(zi - zj) <= ri + rj:
                raise RootPrecisionError(
                    f"overlapping root disks near {mpmath.nstr(zi, 8)}", float(max(ri, rj))
                )


def roots_with_multiplicity(p: Poly, precision: int = 256, seed: int = 0) -> list[ApproxRoot]:
    """All roots of ``p`` with exact multiplicities and certified disjoint disks."""
    if not p:
        raise ValueError("the zero polynomial has no isolated roots")
    out: list[ApproxRoot] = []
    for m, q in sorted(squarefree_decomposition(p).items()):
        for z, r in simple_roots(q, precision, seed):
            out.append(ApproxRoot(z, m, r, precision, q))
    _check_disjoint([(r.value, r.error_radius) for r in out])
    out.sort(key=lambda r: (round(float(r.value.real), 12), round(float(r.value.imag), 12)))
    return out


def _mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    v = Fraction(int(man) * 2**exp) if exp >= 0 else Fraction(int(man), 2 ** (-exp))
    return -v if sign else v


def recognize_gaussian_rational(q: Poly, z: mpmath.mpc, radius, max_den: int = 10**9) -> QI | None:
    """Return the exact Gaussian rational root of ``q`` inside the disk, if there is one."""
    re = _mpf_to_fraction(mpmath.mpf(z.real)).limit_denominator(max_den)
    im = _mpf_to_fraction(mpmath.mpf(z.imag)).limit_denominator(max_den)
    cand = QI(re, im)
    if q(cand):
        return None
    with mpmath.workprec(max(mpmath.mp.prec, 128)):
        if abs(cand.to_mpc() - z) > radius + mpmath.ldexp(abs(z) + 1, -100):
            return None
    return cand


def roots_as_points(p: Poly, precision: int = 256, seed: int = 0) -> list[tuple[object, int]]:
    """Roots as sphere points (exact :class:`QI` when rational) with multiplicities."""
    out = []
    for r in roots_with_multiplicity(p, precision, seed):
        exact = recognize_gaussian_rational(r.factor, r.value, r.error_radius)
        out.append((exact if exact is not None else r.point(), r.multiplicity))
    return out
