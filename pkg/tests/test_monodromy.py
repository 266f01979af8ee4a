"""Monodromy by path lifting; group orders, Galois-closure genera and tuple orbits."""

from fractions import Fraction

import pytest

from semiconj.corpus import corpus_functions
from semiconj.monodromy import (
    branch_points,
    component_orbits,
    galois_closure_genus,
    galois_genus_report,
    monodromy_permutations,
)
from semiconj.orbifold import euler_characteristic, ramification_portrait, signature_orbifolds
from semiconj.permgroup import cycle_type, identity, is_transitive, product
from semiconj.ratfun import INF, parse_expression

P = parse_expression

# (group order, genus of the Galois closure); hand-derived: cyclic for z^d,
# S3 for T3, Klein/dihedral structure for the Lattès maps, S4 for a generic quartic
EXPECTED = {
    "z^2": (2, 0),
    "z^3": (3, 0),
    "z^5": (5, 0),
    "T2": (2, 0),
    "T3": (6, 0),
    "L2": (4, 0),
    "L3": (18, 1),
    "z^4+z": (24, 4),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_orders_and_genera(name):
    f = corpus_functions()[name]
    rep = galois_genus_report(f)
    assert (rep.group_order, rep.genus) == EXPECTED[name]
    assert rep.identity_holds
    _, o2 = signature_orbifolds(f)
    assert 2 - 2 * rep.genus == rep.group_order * euler_characteristic(o2)


@pytest.mark.parametrize("text", ["z^4+z", "4*z^3-3*z", "1/(z^2-2)", "(z^3+1)/(z^3-2*z+3)"])
def test_permutation_system_consistency(text):
    f = P(text)
    ps = monodromy_permutations(f)
    d = f.degree
    por = ramification_portrait(f)
    prod = product(ps.perms, d)
    # loops around all branch points (oo included when branched) compose to the identity
    assert prod == identity(d)
    assert is_transitive(ps.perms, d)
    for b, p in zip(ps.branch_points, ps.perms):
        e = por.entry(b)
        assert e is not None
        assert cycle_type(p) == e.cycle_type()
    assert len(ps.branch_points) == len(por.entries)


def test_branch_points_order_ends_with_infinity():
    bps = branch_points(P("z^4+z"))
    assert bps[-1] is INF and len(bps) == 4
    # 1/(z^2-2) is unbranched over oo (two simple poles) but branched over 0 = f(oo)
    assert INF not in branch_points(P("1/(z^2-2)"))


def test_chart_change_when_infinity_maps_finite():
    f = P("(z^3+1)/(z^3-2*z+3)")
    assert galois_closure_genus(f) == 1
    rep = galois_genus_report(f)
    assert rep.group_order == 6


def test_seed_does_not_change_group():
    f = P("z^4+z")
    assert galois_genus_report(f, seed=0).group_order == galois_genus_report(f, seed=3).group_order


def test_component_orbits():
    ps = monodromy_permutations(corpus_functions()["L2"])
    orb = component_orbits(ps, 4)
    assert orb.count == 6 and set(orb.sizes) == {4}
    ps = monodromy_permutations(corpus_functions()["X_chebyshev"])
    assert component_orbits(ps, 2).count == 1
    with pytest.raises(ValueError):
        component_orbits(ps, 3)


def test_chi_is_fraction():
    rep = galois_genus_report(P("z^4+z"))
    assert rep.chi == Fraction(-1, 4)
