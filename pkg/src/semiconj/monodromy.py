"""Monodromy of a rational map by numerical path lifting.

The basepoint ``p0`` is an exact Gaussian rational on the circle
``|t| = 2 max|b| + 1`` (maximin distance to the finite branch points).  Finite
branch points are ordered by the angle of ``b - p0`` measured counterclockwise
from the direction ``-p0``, ties by distance.  Loop ``j`` runs from ``p0`` to the
circle of radius ``r_j`` (a third of the distance to the nearest other branch
point) around ``b_j``, once around it counterclockwise and back; on the way it
skirts the circles of other branch points without changing the side on which
they lie (a branch point exactly on the path is kept to the right).

With this ordering the concatenation ``loop_1 ... loop_n`` is the big
counterclockwise loop, so ``sigma_1 * ... * sigma_n * sigma_oo = 1`` with
permutations composed left to right.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from . import kernels
from .orbifold import euler_characteristic, ramification_portrait, signature_orbifolds
from .permgroup import (
    StabilizerChain,
    cycle_type,
    format_cycles,
    identity,
    inverse,
    is_transitive,
    perm_order,
    product,
    tuple_orbits,
)
from .ratfun import INF, QI, Poly, RatFun, compose, point_to_json
from .ratfun.points import point_to_complex
from .ratfun.roots import roots_with_multiplicity

log = logging.getLogger(__name__)

__all__ = [
    "TrackingError",
    "PermutationSystem",
    "GroupSummary",
    "GaloisGenusReport",
    "branch_points",
    "monodromy_permutations",
    "group_order",
    "galois_closure_genus",
    "galois_genus_report",
    "component_orbits",
]

H_MIN = 2.0 ** -40
_TIE = 1e-12


class TrackingError(RuntimeError):
    pass


@dataclass(frozen=True)
class PermutationSystem:
    degree: int
    basepoint: complex
    branch_points: tuple  # finite ones in loop order, then oo if branched
    perms: tuple  # 0-based permutations, one per branch point
    fiber_labels: tuple  # complex fiber points over the basepoint, label i <-> index i
    steps: int = 0

    def generators(self) -> list:
        return list(self.perms)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basepoint": [self.basepoint.real, self.basepoint.imag],
            "branch_points": [point_to_json(b) for b in self.branch_points],
            "permutations": [format_cycles(p) for p in self.perms],
            "cycle_types": [list(cycle_type(p)) for p in self.perms],
            "fiber_labels": [[z.real, z.imag] for z in self.fiber_labels],
        }


@dataclass(frozen=True)
class GroupSummary:
    order: int
    generator_cycle_types: tuple

    def to_json(self) -> dict:
        return {"order": self.order, "generator_cycle_types": [list(c) for c in self.generator_cycle_types]}


# geometry ----------------------------------------------------------------------------------

def _choose_basepoint(finite: list[complex]) -> QI:
    R = 2 * max((abs(b) for b in finite), default=0.0) + 1
    best, best_th = -1.0, 0.0
    for k in range(720):
        th = 2 * math.pi * k / 720
        p = R * cmath.exp(1j * th)
        m = min((abs(p - b) for b in finite), default=1.0)
        if m > best + 1e-12:
            best, best_th = m, th
    p = R * cmath.exp(1j * best_th)
    scale = 1 << 16
    return QI(Fraction(round(p.real * scale), scale), Fraction(round(p.imag * scale), scale))


def _cross(u: complex, v: complex) -> float:
    return (u.conjugate() * v).imag


def _loop_order(p0: complex, finite: list[complex]) -> list[int]:
    ref = -p0 / abs(p0)

    def key(j):
        w = (finite[j] - p0) / ref
        return (round(cmath.phase(w), 12), abs(w))

    return sorted(range(len(finite)), key=key)


def _radii(p0: complex, finite: list[complex]) -> list[float]:
    out = []
    for j, b in enumerate(finite):
        others = [abs(b - c) for k, c in enumerate(finite) if k != j]
        out.append((min(others) if others else abs(p0 - b)) / 3)
    return out


def _segment(a: complex, b: complex):
    return (kernels.SEGMENT, np.array([a, b], dtype=np.complex128))


def _arc(c: complex, r: float, a0: float, a1: float):
    return (kernels.ARC, np.array([c, r, a0, a1], dtype=np.complex128))


def _reverse(piece):
    kind, prm = piece
    if kind == kernels.SEGMENT:
        return (kind, prm[::-1].copy())
    return (kind, np.array([prm[0], prm[1], prm[3], prm[2]], dtype=np.complex128))


def _path_to(p0: complex, q: complex, circles: list[tuple[complex, float]]) -> list:
    """Segments from ``p0`` to ``q`` with arcs around any circle the straight path enters."""
    d = q - p0
    L = abs(d)
    u = d / L
    hits = []
    for c, r in circles:
        # |p0 + s d - c|^2 = r^2
        w = p0 - c
        A = abs(d) ** 2
        B = 2 * (w.conjugate() * d).real
        C = abs(w) ** 2 - r * r
        disc = B * B - 4 * A * C
        if disc <= 0:
            continue
        s1 = (-B - math.sqrt(disc)) / (2 * A)
        s2 = (-B + math.sqrt(disc)) / (2 * A)
        if s2 <= 0 or s1 >= 1:
            continue
        hits.append((s1, s2, c, r))
    hits.sort(key=lambda h: h[0])
    pieces = []
    cur = p0
    for s1, s2, c, r in hits:
        e_in, e_out = p0 + s1 * d, p0 + s2 * d
        pieces.append(_segment(cur, e_in))
        side_b = _cross(u, c - p0)
        want_left = not (side_b > _TIE * L * max(1.0, abs(c)))
        a_in = cmath.phase(e_in - c)
        a_out = cmath.phase(e_out - c)
        while a_out <= a_in:
            a_out += 2 * math.pi
        mid = c + r * cmath.exp(1j * (a_in + a_out) / 2)
        if (_cross(u, mid - p0) > 0) != want_left:
            a_out -= 2 * math.pi
        pieces.append(_arc(c, r, a_in, a_out))
        cur = e_out
    pieces.append(_segment(cur, q))
    return pieces


# tracking ------------------------------------------------------------------------------------

def _chart(f: RatFun, precision: int):
    """Return ``(g, to_z)`` with ``g(oo) = oo`` far from the loops, and the map back to ``z``."""
    if f.value_at_infinity() is INF:
        return f, (lambda w: w)
    # z = a + 1/w with a near a pole of f, so points over the loops stay bounded
    pole = roots_with_multiplicity(f.den, precision)[0].value
    for k in range(8, 64, 4):
        s = 1 << k
        a = QI(Fraction(round(float(pole.real) * s), s), Fraction(round(float(pole.imag) * s), s))
        fa = f.den(a)
        if not fa or abs(complex(f.num(a) / fa)) > 1e6:
            break
    m = RatFun(Poly([1, a]), Poly([0, 1]))
    ac = complex(a)
    return compose(f, m), (lambda w: ac + 1 / w if w != 0 else complex("inf"))


def _match(z_end: np.ndarray, labels: np.ndarray) -> tuple:
    n = labels.size
    if n == 1:
        return (0,)
    sep = min(abs(labels[i] - labels[j]) for i in range(n) for j in range(i + 1, n))
    perm = []
    for z in z_end:
        dist = np.abs(labels - z)
        k = int(np.argmin(dist))
        if dist[k] > sep / 4:
            raise TrackingError("lifted endpoint is not close to any fiber label")
        perm.append(k)
    if len(set(perm)) != n:
        raise TrackingError("lifted endpoints do not form a permutation")
    return tuple(perm)


def _track(nc, dc, pieces, z0) -> tuple[np.ndarray, int]:
    z = z0
    total = 0
    for kind, prm in pieces:
        z, status, steps = kernels.track_piece(nc, dc, kind, prm, z, 0.01, H_MIN)
        total += steps
        if status != 0:
            raise TrackingError("step size fell below the floor; path passes too close to a branch point")
    return z, total


def monodromy_permutations(f: RatFun, precision: int = 256, seed: int = 0, portrait=None) -> PermutationSystem:
    """Lift a standard loop system around the branch points; all consistency checks run before returning."""
    d = f.degree
    if d < 2:
        raise ValueError("monodromy needs degree >= 2")
    if portrait is None:
        portrait = ramification_portrait(f, precision, seed)
    bps = portrait.critical_values()
    finite_pts = [b for b in bps if b is not INF]
    finite = [point_to_complex(b) for b in finite_pts]
    g, to_z = _chart(f, precision)

    p0q = _choose_basepoint(finite)
    p0 = complex(p0q)
    roots = roots_with_multiplicity(g.num - g.den * p0q, precision, seed)
    if len(roots) != d or any(r.multiplicity != 1 for r in roots):
        raise TrackingError("basepoint fiber is not a set of d simple points")
    labels = np.array([complex(r.value) for r in roots], dtype=np.complex128)
    nc = np.array(g.num.to_complex(), dtype=np.complex128)
    dc = np.array(g.den.to_complex(), dtype=np.complex128)

    order = _loop_order(p0, finite)
    radii = _radii(p0, finite)
    perms = []
    steps = 0
    for j in order:
        b, r = finite[j], radii[j]
        q = b + r * (p0 - b) / abs(p0 - b)
        others = [(finite[k], radii[k]) for k in range(len(finite)) if k != j]
        out = _path_to(p0, q, others)
        a0 = cmath.phase(p0 - b)
        loop = out + [_arc(b, r, a0, a0 + 2 * math.pi)] + [_reverse(p) for p in reversed(out)]
        z_end, n_steps = _track(nc, dc, loop, labels.copy())
        steps += n_steps
        perms.append(_match(z_end, labels))

    ordered = [finite_pts[j] for j in order]
    total = product(perms, d)
    if INF in bps:
        perms.append(inverse(total))
        ordered.append(INF)
    elif total != identity(d):
        raise TrackingError("product of loop permutations is not the identity")

    for b, p in zip(ordered, perms):
        expected = portrait.entry(b).cycle_type()
        if cycle_type(p) != expected:
            raise TrackingError(f"cycle type {cycle_type(p)} disagrees with local degrees {expected}")
    if not is_transitive(perms, d):
        raise TrackingError("monodromy group is not transitive")

    fiber = tuple(complex(to_z(complex(z))) for z in labels)
    return PermutationSystem(d, p0, tuple(ordered), tuple(perms), fiber, steps)


def branch_points(f: RatFun, precision: int = 256) -> list:
    """Branch points in loop order (finite ones by angle from the basepoint), oo last."""
    portrait = ramification_portrait(f, precision)
    finite_pts = [b for b in portrait.critical_values() if b is not INF]
    finite = [point_to_complex(b) for b in finite_pts]
    p0 = complex(_choose_basepoint(finite))
    out = [finite_pts[j] for j in _loop_order(p0, finite)]
    if len(finite_pts) < len(portrait.entries):
        out.append(INF)
    return out


def group_order(ps: PermutationSystem) -> GroupSummary:
    chain = StabilizerChain(ps.perms, ps.degree)
    return GroupSummary(chain.order(), tuple(cycle_type(p) for p in ps.perms))


@dataclass(frozen=True)
class GaloisGenusReport:
    degree: int
    group_order: int
    genus: int
    chi: Fraction
    identity_holds: bool
    system: PermutationSystem

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "group_order": self.group_order,
            "galois_genus": self.genus,
            "chi": str(self.chi),
            "rh_identity": self.identity_holds,
            "monodromy": self.system.to_json(),
        }


def galois_genus_report(f: RatFun, precision: int = 256, seed: int = 0) -> GaloisGenusReport:
    """Genus of the Galois closure, cross-checked against ``2 - 2g = |G| chi(O2)``."""
    portrait = ramification_portrait(f, precision, seed)
    ps = monodromy_permutations(f, precision, seed, portrait=portrait)
    G = group_order(ps).order
    s = sum((1 - Fraction(1, perm_order(p)) for p in ps.perms), Fraction(0))
    g2 = 2 + G * (s - 2)  # 2 * genus
    if g2.denominator != 1 or g2.numerator % 2:
        raise ArithmeticError(f"non-integral Galois genus {g2 / 2}")
    genus = g2.numerator // 2
    _, o2 = signature_orbifolds(f, precision, portrait=portrait)
    chi = euler_characteristic(o2)
    ok = 2 - 2 * genus == G * chi
    if not ok:
        raise ArithmeticError("Riemann-Hurwitz cross-identity fails; monodromy and portrait disagree")
    return GaloisGenusReport(f.degree, G, genus, chi, ok, ps)


def galois_closure_genus(f: RatFun, precision: int = 256, seed: int = 0) -> int:
    return galois_genus_report(f, precision, seed).genus


def component_orbits(ps: PermutationSystem, k: int):
    """Orbits of the monodromy group on injective ``k``-tuples of fiber labels."""
    if not 2 <= k <= ps.degree:
        raise ValueError("need 2 <= k <= deg")
    return tuple_orbits(ps.perms, ps.degree, k)
