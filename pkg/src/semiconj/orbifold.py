"""Ramification portraits, signature orbifolds and Euler characteristics.

For a rational map ``f`` of degree ``d``:

* ``nu2(v)`` is the lcm of the local degrees over ``v`` (so ``nu2 > 1`` exactly
  on critical values);
* ``nu1(z) = nu2(f(z)) / deg_z f`` above the support of ``nu2`` and 1 elsewhere;
* ``chi(O) = 2 + sum(1/nu - 1)``.

Critical points come from the squarefree decomposition of the Wronskian
``N'D - ND'``: a root of multiplicity ``m`` has local degree ``m + 1``, poles
included.  At infinity ``e - 1 = 2d - 2 - deg W``.  Distinct finite critical
values are the roots of the squarefree part of ``prod_m Res_z(q_m(z), N(z) - t D(z))``,
so grouping critical points by value never relies on floating comparison.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .ratfun import INF, QI, ApproxPoint, Poly, RatFun, evaluate, local_degree, same_point
from .ratfun.fibers import exact_fiber
from .ratfun.points import Ball, format_point, point_key, point_to_json
from .ratfun.poly import poly_gcd, squarefree_decomposition
from .ratfun.roots import RootPrecisionError, roots_as_points, roots_with_multiplicity
from .ratfun.scalar import as_qi
from .ratfun.subres import resultant

log = logging.getLogger(__name__)

__all__ = [
    "PortraitEntry",
    "RamificationPortrait",
    "Orbifold",
    "GenusClass",
    "ramification_portrait",
    "signature_orbifolds",
    "euler_characteristic",
    "classify_galois_genus",
    "is_covering_map",
    "is_minimal_holomorphic",
    "check_rh_identity",
    "verify_primitive_solution_theorem",
    "TheoremReport",
    "fiber_over",
]


@dataclass(frozen=True)
class PortraitEntry:
    value: object
    fiber: tuple  # ((point, local_degree), ...)

    @property
    def nu(self) -> int:
        return math.lcm(*(e for _, e in self.fiber))

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((e for _, e in self.fiber), reverse=True))


@dataclass(frozen=True)
class RamificationPortrait:
    function_degree: int
    entries: tuple  # PortraitEntry, critical values only, canonical order

    def critical_values(self) -> list:
        return [e.value for e in self.entries]

    def entry(self, v) -> PortraitEntry | None:
        for e in self.entries:
            if same_point(e.value, v):
                return e
        return None

    def total_ramification(self) -> int:
        return sum(k - 1 for e in self.entries for _, k in e.fiber)

    def to_json(self) -> dict:
        return {
            "degree": self.function_degree,
            "critical_values": [
                {
                    "value": point_to_json(e.value),
                    "fiber": [{**point_to_json(p), "local_degree": k} for p, k in e.fiber],
                }
                for e in self.entries
            ],
        }


# portrait ---------------------------------------------------------------------------

def _critical_points(f: RatFun) -> tuple[dict[int, Poly], int]:
    """Squarefree pieces ``{e: q}`` of critical points by local degree, and ``e`` at infinity."""
    d = f.degree
    W = f.wronskian()
    pieces = {m + 1: q for m, q in squarefree_decomposition(W).items()} if W.degree > 0 else {}
    e_inf = 2 * d - 1 - W.degree
    return pieces, e_inf


def _critical_value_poly(f: RatFun, pieces: dict[int, Poly]) -> Poly:
    """Squarefree polynomial in ``t`` whose roots are the finite critical values at finite points."""
    G = [Poly([f.num[k], -f.den[k]]) for k in range(max(f.num.degree, f.den.degree) + 1)]
    R = Poly.const(1)
    for q in pieces.values():
        h = q.exact_div(poly_gcd(q, f.den))  # drop poles; their value is oo
        if h.degree < 1:
            continue
        F = [Poly.const(c) for c in h.coeffs]
        R = R * resultant(F, G)
    if R.degree < 1:
        return R
    return R.exact_div(poly_gcd(R, R.derivative())).monic()


def _approx_fiber(f: RatFun, v: ApproxPoint, known: list, precision: int) -> list:
    """Fiber over a non-exact value: ``known`` critical points plus numerically deflated simple points."""
    d = f.degree
    with mpmath.workprec(precision + 32):
        vc = v.value
        n = max(f.num.degree, f.den.degree)
        cs = [f.num[k].to_mpc() - vc * f.den[k].to_mpc() for k in range(n + 1)]
        rem = list(cs)
        for p, e in known:
            for _ in range(e):
                # synthetic division by (z - p)
                out = [mpmath.mpc(0)] * (len(rem) - 1)
                acc = mpmath.mpc(0)
                for k in range(len(rem) - 1, 0, -1):
                    acc = acc * p.value + rem[k]
                    out[k - 1] = acc
                rem = out
        simple = d - sum(e for _, e in known)
        pts = []
        if simple > 0:
            if len(rem) - 1 != simple:
                raise RootPrecisionError("deflated fiber polynomial has unexpected degree")
            if simple == 1:
                zs = [-rem[0] / rem[1]]
            else:
                zs = mpmath.polyroots(list(reversed(rem)), maxsteps=200, extraprec=precision)
            dcs = [f.den[k].to_mpc() for k in range(n + 1)]
            limit = mpmath.ldexp(1, -(precision // 2))
            for z in zs:
                z = mpmath.mpc(z)
                for _ in range(100):
                    pv = mpmath.polyval(list(reversed(cs)), z, derivative=True)
                    if pv[1] == 0:
                        break
                    dz = pv[0] / pv[1]
                    z -= dz
                    if abs(dz) <= mpmath.ldexp(1, -precision) * max(1, abs(z)):
                        break
                pv, dpv = mpmath.polyval(list(reversed(cs)), z, derivative=True)
                dv = mpmath.polyval(list(reversed(dcs)), z)
                rad = n * (abs(pv) + abs(dv) * v.radius) / abs(dpv)
                rad = max(rad, limit * max(1, abs(z)) / 4)
                pts.append((ApproxPoint(z, rad, precision), 1))
    return list(known) + pts


def ramification_portrait(f: RatFun, precision: int = 256, seed: int = 0) -> RamificationPortrait:
    """All critical values of ``f`` with their full fibers and local degrees."""
    d = f.degree
    if d < 2:
        raise ValueError("ramification portrait needs degree >= 2")
    pieces, e_inf = _critical_points(f)
    S = _critical_value_poly(f, pieces)
    values = [p for p, _ in roots_as_points(S, precision, seed)] if S.degree > 0 else []
    has_pole = any(poly_gcd(q, f.den).degree > 0 for q in pieces.values())
    f_inf = f.value_at_infinity()
    if e_inf > 1:
        if not any(same_point(f_inf, v) for v in values):
            values.append(f_inf)
    if has_pole and INF not in values:
        values.append(INF)

    # approximate critical points, assigned to approximate critical values by enclosure
    assigned: dict[int, list] = {}
    approx_vals = [i for i, v in enumerate(values) if isinstance(v, ApproxPoint)]
    if approx_vals:
        for e, q in pieces.items():
            h = q.exact_div(poly_gcd(q, f.den))
            if h.degree < 1:
                continue
            for p, _ in roots_as_points(h, precision, seed):
                if not isinstance(p, ApproxPoint):
                    continue
                with mpmath.workprec(precision):
                    fv = evaluate(f, p)
                hits = [i for i in approx_vals if same_point(values[i], fv)]
                if isinstance(fv, ApproxPoint) and len(hits) == 1:
                    assigned.setdefault(hits[0], []).append((p, e))
                elif len(hits) > 1:
                    raise RootPrecisionError("critical value enclosures overlap; raise precision")
                # otherwise the value is exact and handled by the exact fiber

    entries = []
    for i, v in enumerate(values):
        if isinstance(v, ApproxPoint):
            v = ApproxPoint(v.value, v.radius, v.prec, S)
            fib = _approx_fiber(f, v, assigned.get(i, []), precision)
        else:
            fib = exact_fiber(f, v, precision, seed)
        fib = tuple(sorted(fib, key=lambda pe: point_key(pe[0])))
        if sum(k for _, k in fib) != d:
            raise ArithmeticError(f"fiber over {format_point(v)} has local degrees summing to != {d}")
        if max(k for _, k in fib) < 2:
            continue
        entries.append(PortraitEntry(v, fib))
    entries.sort(key=lambda e: point_key(e.value))
    portrait = RamificationPortrait(d, tuple(entries))
    if portrait.total_ramification() != 2 * d - 2:
        raise ArithmeticError(
            f"Riemann-Hurwitz count {portrait.total_ramification()} != {2 * d - 2}; raise precision"
        )
    return portrait


def fiber_over(f: RatFun, v, portrait: RamificationPortrait | None = None, precision: int = 256) -> list:
    """``f^-1{v}`` with local degrees for any sphere point ``v``."""
    if portrait is not None:
        e = portrait.entry(v)
        if e is not None:
            return list(e.fiber)
    if v is INF or isinstance(v, QI):
        return exact_fiber(f, v, precision)
    f_inf = f.value_at_infinity()
    if same_point(f_inf, v):
        return exact_fiber(f, f_inf, precision)
    return _approx_fiber(f, v, [], precision)


# orbifolds ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Orbifold:
    """Ramification function ``nu`` given by its finite support; ``nu = 1`` elsewhere."""

    support: tuple = ()  # ((point, nu), ...) with nu >= 2, canonical order

    @classmethod
    def from_pairs(cls, pairs) -> "Orbifold":
        merged: list = []
        for p, nu in pairs:
            if nu < 1:
                raise ValueError("ramification values are positive")
            if nu == 1:
                continue
            for q, m in merged:
                if same_point(p, q):
                    if m != nu:
                        raise ValueError(f"conflicting nu at {format_point(p)}")
                    break
            else:
                merged.append((p, nu))
        merged.sort(key=lambda pn: point_key(pn[0]))
        return cls(tuple(merged))

    def nu(self, p) -> int:
        for q, m in self.support:
            if same_point(p, q):
                return m
        return 1

    def points(self) -> list:
        return [p for p, _ in self.support]

    def signature(self) -> tuple[int, ...]:
        return tuple(sorted(m for _, m in self.support))

    def euler_characteristic(self) -> Fraction:
        return euler_characteristic(self)

    def __eq__(self, other):
        if not isinstance(other, Orbifold) or len(self.support) != len(other.support):
            return NotImplemented if not isinstance(other, Orbifold) else False
        return all(other.nu(p) == m for p, m in self.support)

    def __hash__(self):
        return hash(self.signature())

    def __str__(self):
        inner = ", ".join(f"{format_point(p)}: {m}" for p, m in self.support)
        return "{" + inner + "}"

    def to_json(self) -> list:
        return [{"point": point_to_json(p), "nu": m} for p, m in self.support]


def euler_characteristic(o) -> Fraction:
    """``2 + sum(1/nu - 1)`` for an :class:`Orbifold` or a plain list of nu values."""
    nus = o.signature() if isinstance(o, Orbifold) else tuple(o)
    return 2 + sum((Fraction(1, n) - 1 for n in nus), Fraction(0))


def signature_orbifolds(f: RatFun, precision: int = 256, portrait: RamificationPortrait | None = None):
    """``(O1, O2)`` of ``f``; ``f: O1 -> O2`` is a covering map by construction.

    A Moebius map has no ramification, so both orbifolds are trivial.
    """
    if f.degree == 1:
        return Orbifold.from_pairs([]), Orbifold.from_pairs([])
    if portrait is None:
        portrait = ramification_portrait(f, precision)
    o2 = Orbifold.from_pairs((e.value, e.nu) for e in portrait.entries)
    pairs = []
    for e in portrait.entries:
        for p, k in e.fiber:
            pairs.append((p, e.nu // k))
    return Orbifold.from_pairs(pairs), o2


class GenusClass(str, enum.Enum):
    zero = "zero"
    one = "one"
    two_or_more = "two_or_more"


def classify_galois_genus(f: RatFun, precision: int = 256) -> GenusClass:
    """Genus class of the Galois closure of ``f``, read off the sign of chi(O2)."""
    _, o2 = signature_orbifolds(f, precision)
    chi = euler_characteristic(o2)
    if chi > 0:
        return GenusClass.zero
    if chi == 0:
        return GenusClass.one
    return GenusClass.two_or_more


# map conditions -------------------------------------------------------------------------

_REGULAR_SAMPLES = (QI(2), QI(Fraction(1, 3), Fraction(1, 2)))


def _check_points(f: RatFun, o1: Orbifold, o2: Orbifold, precision: int):
    """Yield ``(z, deg_z f, f(z))`` over every point where either condition can fail.

    The conditions are trivially true where ``nu1 = 1``, ``deg_z f = 1`` and
    ``nu2(f(z)) = 1``, so it suffices to visit the fibers over supp(o2),
    f(supp o1), the critical values, and a few regular values.
    """
    portrait = ramification_portrait(f, precision)
    targets: list = []

    def add(v):
        if not any(same_point(v, w) for w in targets):
            targets.append(v)

    for v in portrait.critical_values():
        add(v)
    for v in o2.points():
        add(v)
    with mpmath.workprec(precision):
        for p in o1.points():
            add(evaluate(f, p))
        for z in _REGULAR_SAMPLES:
            add(evaluate(f, z))
    for v in targets:
        # reuse an exact representative when an approximate image matches a known value
        for w in portrait.critical_values() + o2.points():
            if same_point(v, w):
                v = w
                break
        for z, k in fiber_over(f, v, portrait, precision):
            yield z, k, v


def is_covering_map(f: RatFun, o1: Orbifold, o2: Orbifold, precision: int = 256) -> bool:
    """``nu2(f(z)) == nu1(z) * deg_z f`` everywhere."""
    for z, k, v in _check_points(f, o1, o2, precision):
        if o2.nu(v) != o1.nu(z) * k:
            log.debug("covering condition fails at %s", format_point(z))
            return False
    return True


def is_minimal_holomorphic(f: RatFun, o1: Orbifold, o2: Orbifold, precision: int = 256) -> bool:
    """``nu2(f(z)) == nu1(z) * gcd(deg_z f, nu2(f(z)))`` everywhere."""
    for z, k, v in _check_points(f, o1, o2, precision):
        n2 = o2.nu(v)
        if n2 != o1.nu(z) * math.gcd(k, n2):
            log.debug("minimality condition fails at %s", format_point(z))
            return False
    return True


def check_rh_identity(f: RatFun, o1: Orbifold, o2: Orbifold, precision: int = 256) -> bool:
    """Exact test of ``chi(o1) == deg f * chi(o2)`` for a covering ``f: o1 -> o2``."""
    if not is_covering_map(f, o1, o2, precision):
        raise ValueError("check_rh_identity requires a covering map")
    return euler_characteristic(o1) == f.degree * euler_characteristic(o2)


# triple-level check ----------------------------------------------------------------------

@dataclass
class TheoremReport:
    name: str
    O1: Orbifold
    O2: Orbifold
    chi1: Fraction
    chi2: Fraction
    checks: dict = field(default_factory=dict)
    rh_identity: bool = False

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and self.rh_identity

    def to_json(self) -> dict:
        out = {"triple": self.name} if self.name else {}
        return out | {
            "O1X": self.O1.to_json(),
            "O2X": self.O2.to_json(),
            "chi_O1X": str(self.chi1),
            "chi_O2X": str(self.chi2),
            "checks": {k: bool(v) for k, v in self.checks.items()},
            "rh_identity": bool(self.rh_identity),
            "verdict": "pass" if self.ok else "fail",
        }


def verify_primitive_solution_theorem(t, precision: int = 256) -> TheoremReport:
    """For a primitive triple: chi(O1X), chi(O2X) >= 0; B, A minimal holomorphic on them; X a covering."""
    from .semiconjugacy import is_primitive, verify_semiconjugacy

    if not verify_semiconjugacy(t.A, t.B, t.X):
        raise ValueError("triple is not semiconjugate")
    if not is_primitive(t.X, t.B):
        raise ValueError("triple is not primitive")
    if t.X.degree == 1:
        o1 = o2 = Orbifold()
    else:
        o1, o2 = signature_orbifolds(t.X, precision)
    chi1, chi2 = euler_characteristic(o1), euler_characteristic(o2)
    rep = TheoremReport(t.name, o1, o2, chi1, chi2)
    rep.checks = {
        "chi_O1X_nonnegative": chi1 >= 0,
        "chi_O2X_nonnegative": chi2 >= 0,
        "B_minimal_on_O1X": is_minimal_holomorphic(t.B, o1, o1, precision),
        "A_minimal_on_O2X": is_minimal_holomorphic(t.A, o2, o2, precision),
        "X_covering_O1X_to_O2X": _is_covering_any(t.X, o1, o2, precision),
    }
    rep.rh_identity = chi1 == t.X.degree * chi2
    return rep


def _is_covering_any(X: RatFun, o1: Orbifold, o2: Orbifold, precision: int) -> bool:
    if X.degree >= 2:
        return is_covering_map(X, o1, o2, precision)
    # a Moebius map is a covering iff it carries nu1 onto nu2
    with mpmath.workprec(precision):
        images = [(evaluate(X, p), m) for p, m in o1.support]
    return Orbifold.from_pairs(images) == o2
