"""Ramification portraits, signature orbifolds and the orbifold map checks."""

from fractions import Fraction

import pytest
import sympy as sp
from conftest import ratfun_to_sympy, zs

from semiconj.corpus import corpus_functions, corpus_triples
from semiconj.orbifold import (
    GenusClass,
    Orbifold,
    classify_galois_genus,
    euler_characteristic,
    fiber_over,
    is_covering_map,
    is_minimal_holomorphic,
    ramification_portrait,
    signature_orbifolds,
    verify_primitive_solution_theorem,
)
from semiconj.ratfun import INF, QI, parse_expression

P = parse_expression

# signature of O2, chi(O2), Galois genus class
TABLE = {
    "z^2": ((2, 2), Fraction(1), GenusClass.zero),
    "z^3": ((3, 3), Fraction(2, 3), GenusClass.zero),
    "z^5": ((5, 5), Fraction(2, 5), GenusClass.zero),
    "T2": ((2, 2), Fraction(1), GenusClass.zero),
    "L2": ((2, 2, 2), Fraction(1, 2), GenusClass.zero),
    "L3": ((2, 2, 2, 2), Fraction(0), GenusClass.one),
    "z^4+z": (None, Fraction(-1, 4), GenusClass.two_or_more),
}


@pytest.mark.parametrize("name", sorted(TABLE))
def test_signature_table(name):
    f = corpus_functions()[name]
    sig, chi, cls = TABLE[name]
    _, o2 = signature_orbifolds(f)
    if sig is not None:
        assert o2.signature() == sig
    assert euler_characteristic(o2) == chi
    assert classify_galois_genus(f) is cls


def test_euler_characteristic_examples():
    assert euler_characteristic([2, 3, 7]) == Fraction(-1, 42)
    assert euler_characteristic([]) == 2
    assert euler_characteristic([2, 2, 2, 2]) == 0


@pytest.mark.parametrize("text", ["z^4+z", "(z^3+1)/(z^3-2*z+3)", "4*z^3-3*z", "1/(z^2-2)"])
def test_portrait_against_sympy(text):
    f = P(text)
    por = ramification_portrait(f)
    assert por.total_ramification() == 2 * f.degree - 2
    # oracle: number of distinct finite critical points from sympy's derivative
    expr = ratfun_to_sympy(f)
    crit = sp.Poly(sp.numer(sp.together(sp.diff(expr, zs))), zs)
    n_finite = len(sp.Poly(crit, zs).sqf_part().nroots())
    n_ours = sum(1 for e in por.entries for p, k in e.fiber if k > 1 and p is not INF)
    assert n_ours == n_finite
    for e in por.entries:
        assert sum(k for _, k in e.fiber) == f.degree


def test_fiber_over_regular_and_critical():
    f = P("2*z^2-1")
    assert sorted(k for _, k in fiber_over(f, QI(-1))) == [2]
    assert sorted(k for _, k in fiber_over(f, INF)) == [2]
    assert sorted(k for _, k in fiber_over(f, QI(7))) == [1, 1]


def test_covering_and_minimal_examples():
    f = P("z^2")
    triv = Orbifold.from_pairs([])
    o2 = Orbifold.from_pairs([(QI(0), 2), (INF, 2)])
    assert is_covering_map(f, triv, o2)
    assert not is_covering_map(f, Orbifold.from_pairs([(QI(0), 3)]), o2)
    g = P("z^3")
    assert not is_minimal_holomorphic(g, triv, Orbifold.from_pairs([(QI(1), 2)]))


def test_from_pairs_drops_trivial_and_merges():
    o = Orbifold.from_pairs([(QI(0), 1), (QI(1), 2), (QI(1), 2)])
    assert o.signature() == (2,)
    assert o.nu(QI(5)) == 1


@pytest.mark.parametrize("entry", corpus_triples(), ids=lambda e: e.name)
def test_theorem_report_on_corpus(entry):
    rep = verify_primitive_solution_theorem(entry.triple)
    assert rep.ok
    assert rep.chi1 == entry.triple.X.degree * rep.chi2 or entry.triple.X.degree == 1
    assert rep.chi2 >= 0
