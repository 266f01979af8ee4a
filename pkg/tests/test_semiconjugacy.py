"""Exact semiconjugacy, fiber-field degree, Lüroth generators and reduction."""

import pytest
import sympy as sp
from conftest import ratfun_to_sympy, zs

from semiconj import NotSemiconjugateError, Triple
from semiconj.corpus import L2, composed_chebyshev, corpus_triples, negative_triples
from semiconj.ratfun import INF, ONE, ZERO, compose, evaluate, parse_expression
from semiconj.semiconjugacy import (
    decompose_through,
    exceptional_polynomial,
    fiber_field_degree,
    generic_injectivity_check,
    is_primitive,
    luroth_generator,
    normalize_generator,
    reduce_to_primitive,
    verify_semiconjugacy,
)

P = parse_expression


def test_chebyshev_identity_against_sympy():
    A, B, X = P("2*z^2-1"), P("z^2"), P("(z+1/z)/2")
    assert verify_semiconjugacy(A, B, X)
    lhs = ratfun_to_sympy(A).subs(zs, ratfun_to_sympy(X))
    rhs = ratfun_to_sympy(X).subs(zs, ratfun_to_sympy(B))
    assert sp.simplify(lhs - rhs) == 0


def test_negatives_are_rejected():
    for name, A, B, X in negative_triples():
        assert not verify_semiconjugacy(A, B, X), name
        with pytest.raises(NotSemiconjugateError):
            Triple(A, B, X)


def test_triple_requires_degrees():
    with pytest.raises(ValueError):
        Triple(P("z+1"), P("z^2"), P("z"))


@pytest.mark.parametrize("entry", corpus_triples(), ids=lambda e: e.name)
def test_corpus_is_primitive(entry):
    t = entry.triple
    assert verify_semiconjugacy(t.A, t.B, t.X)
    assert fiber_field_degree(t.X, t.B) == 1


def test_fiber_field_degree_examples():
    assert fiber_field_degree(P("z^2"), P("z^2")) == 2
    assert not is_primitive(P("z^2"), P("z^2"))
    assert fiber_field_degree(P("z^2"), P("z^3")) == 1
    # X = (z^2 + z^-2)/2 and B = z^2 are both functions of z^2
    assert fiber_field_degree(P("(z^2+1/z^2)/2"), P("z^2")) == 2
    assert fiber_field_degree(P("z^4"), P("z^6")) == 2


def test_luroth_generator_normalized():
    W = luroth_generator(P("(z^2+1/z^2)/2"), P("z^2"))
    assert W == P("z^2")
    assert evaluate(W, ZERO) == ZERO and evaluate(W, ONE) == ONE and evaluate(W, INF) is INF
    W = luroth_generator(P("z^4"), P("z^6"))
    assert W.degree == 2
    assert decompose_through(P("z^4"), W) is not None
    with pytest.raises(ValueError):
        luroth_generator(P("z^2"), P("z^3"))


def test_normalize_generator_is_idempotent():
    W = normalize_generator(P("(3*z^2+1)/(z^2-5)"))
    assert normalize_generator(W) == W
    assert W.degree == 2


def test_decompose_through():
    W = P("z^2+z")
    f = compose(P("(z^2-3)/(z+1)"), W)
    g = decompose_through(f, W)
    assert g == P("(z^2-3)/(z+1)")
    assert decompose_through(P("z^3"), W) is None


def test_reduce_composed_chebyshev_one_step():
    steps = reduce_to_primitive(composed_chebyshev())
    assert len(steps) == 1
    st = steps[0]
    assert st.X_tilde.degree == 2
    new = st.new_triple
    assert verify_semiconjugacy(new.A, new.B, new.X)
    assert is_primitive(new.X, new.B)


def test_reduce_primitive_is_noop():
    t = corpus_triples()[1].triple
    assert reduce_to_primitive(t) == []


def test_injectivity_and_exceptional_set():
    t = corpus_triples()[1].triple
    rep = generic_injectivity_check(t.X, t.B, 20, seed=1)
    assert rep.ok and rep.passed + len(rep.excluded_violations) == 20
    E = exceptional_polynomial(P("z^2"), P("z^3"))
    # w != z with w^2 = z^2 and w^3 = z^3 forces z = 0
    assert E.degree >= 1 and E(ZERO) == ZERO


def test_l2_commutes_with_z_squared_odd_lattes():
    A = P("(z+1)^4/(16*z*(z-1)^2)")
    assert verify_semiconjugacy(A, L2(), P("z^2"))
