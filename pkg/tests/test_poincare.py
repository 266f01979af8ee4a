"""Periodic points, linearizer series and the parametrization identity.

Closed-form oracles: for z^2 at 1 the linearizer is exp(z); for 2z^2 - 1 at -1/2
it is cos(2*pi/3 - 2z/sqrt(3)).
"""

import math

import mpmath
import numpy as np
import pytest

from semiconj.corpus import corpus_triples
from semiconj.poincare import (
    NoAdmissiblePointError,
    check_candidate,
    find_admissible_periodic_point,
    grid_points,
    multiplier_equality_check,
    periodic_points,
    poincare_evaluate,
    poincare_series,
    verify_parametrization_identity,
)
from semiconj.ratfun import INF, QI, parse_expression

P = parse_expression


def _triple(name):
    return next(e.triple for e in corpus_triples() if e.name == name)


def test_chebyshev_fixed_points():
    pts = periodic_points(P("2*z^2-1"), 1)
    finite = {complex(p.point): p for p in pts if p.point is not INF}
    assert set(finite) == {-0.5, 1.0}
    assert finite[-0.5].multiplier == QI(-2) and finite[1.0].multiplier == QI(4)
    assert all(p.repelling for p in finite.values())
    inf = [p for p in pts if p.point is INF]
    assert all(not p.repelling for p in inf)


def test_period_two_points_of_z_squared():
    pts = periodic_points(P("z^2"), 2)
    assert len(pts) == 2
    for p in pts:
        w = complex(p.point.value if hasattr(p.point, "value") else p.point)
        assert abs(w**3 - 1) < 1e-12 and abs(w - 1) > 0.5
        assert p.period == 2


def test_exp_linearizer():
    s = poincare_series(P("z^2"), QI(1), 64)
    ref = np.array([1 / math.factorial(n) for n in range(21)])
    assert np.max(np.abs(s.coeffs[:21] - ref)) < 1e-10
    assert abs(s.multiplier - 2) < 1e-15
    assert s.residual < 1e-8
    assert abs(poincare_evaluate(s, P("z^2"), 1.0) - math.e) < 1e-10


def test_cos_linearizer():
    s = poincare_series(P("2*z^2-1"), QI(-1) / 2, 64)
    assert abs(s.coeffs[2] - 1 / 3) < 1e-10
    with mpmath.workdps(30):
        ref = mpmath.taylor(lambda z: mpmath.cos(2 * mpmath.pi / 3 - 2 * z / mpmath.sqrt(3)), 0, 12)
    assert np.max(np.abs(s.coeffs[:13] - np.array([complex(c) for c in ref]))) < 1e-10
    z = np.array([0.3 + 0.2j, -1.5, 2j])
    got = poincare_evaluate(s, P("2*z^2-1"), z)
    want = np.cos(2 * np.pi / 3 - 2 * z / np.sqrt(3))
    assert np.max(np.abs(got - want)) < 1e-8


def test_series_rejects_non_repelling():
    with pytest.raises(ValueError):
        poincare_series(P("z^2"), QI(0), 16)


def test_grid_size():
    g = grid_points(0.5, 32, 16)
    assert g.size == 512 and np.max(np.abs(g)) <= 0.5 + 1e-15


@pytest.mark.parametrize("name,z0,l", [("power", 1, 1), ("chebyshev", -0.5, 2)])
def test_admissible_points(name, z0, l):
    adm = find_admissible_periodic_point(_triple(name))
    assert abs(complex(adm.z0) - z0) < 1e-12
    assert adm.l == l


def test_candidate_rejection_reason():
    t = _triple("chebyshev")
    r = check_candidate(t, QI(1), 1)
    assert isinstance(r, str)


@pytest.mark.parametrize("name", ["chebyshev", "odd-lattes"])
def test_parametrization_identity(name):
    rep = verify_parametrization_identity(_triple(name))
    assert rep.ok and rep.grid_size == 512
    assert rep.branches == _triple(name).X.degree
    assert max(rep.residuals) < 1e-6


@pytest.mark.parametrize("entry", corpus_triples(), ids=lambda e: e.name)
def test_multiplier_equality(entry):
    adm = find_admissible_periodic_point(entry.triple)
    rep = multiplier_equality_check(entry.triple, adm)
    assert rep.ok and rep.max_deviation < 1e-8


def test_chebyshev_multiplier_four():
    t = _triple("chebyshev")
    rep = multiplier_equality_check(t, find_admissible_periodic_point(t))
    assert abs(rep.base_multiplier - 4) < 1e-12


def test_no_admissible_point_raises():
    # A = B = z^2, X = z^2 is not primitive, so no point can be admissible
    from semiconj import Triple

    with pytest.raises((NoAdmissiblePointError, ValueError)):
        find_admissible_periodic_point(Triple(P("z^2"), P("z^2"), P("z^2")))
