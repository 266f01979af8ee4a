"""Exact arithmetic, parsing, gcd/resultant and root isolation.

sympy is the independent oracle for symbolic identities.
"""

import mpmath
import pytest
import sympy as sp
from conftest import poly_to_sympy, qi_to_sympy, ratfun_to_sympy, zs

from semiconj.ratfun import (
    INF,
    QI,
    ParseError,
    Poly,
    RatFun,
    compose,
    derivative,
    equals,
    evaluate,
    iterate,
    local_degree,
    parse_expression,
    poly_gcd,
    roots_with_multiplicity,
    same_point,
    squarefree_decomposition,
)
from semiconj.ratfun.fibers import exact_fiber, is_critical_value_exact
from semiconj.ratfun.subres import resultant, subresultant_gcd

P = parse_expression


def test_qi_field_ops():
    a, b = QI(1, 2), QI(-3, 1)
    assert a * b / b == a
    assert (a + b) - b == a
    assert a.inverse() * a == QI(1)
    assert QI(0, 1) ** 2 == QI(-1)
    assert a.conjugate() == QI(1, -2)


def test_parse_and_print_roundtrip():
    for text in ["2*z^2-1", "(z+1/z)/2", "(i*z^2+1/3)/(z-2*i)", "z^4+z", "1/(z^2-2)"]:
        f = P(text)
        assert P(str(f)) == f


def test_parse_error_has_position():
    with pytest.raises(ParseError) as ei:
        P("z^")
    assert "position 2" in str(ei.value)
    with pytest.raises(ParseError):
        P("z + * 3")
    with pytest.raises(ParseError):
        P("1/(z-z)")


def test_canonical_form_cancels_common_factors():
    f = P("(z^2-1)/(z-1)")
    assert f == P("z+1")
    assert f.degree == 1


def test_evaluate_examples():
    T2 = P("2*z^2-1")
    assert evaluate(T2, QI(-1, 0) / 2) == QI(-1, 0) / 2
    assert evaluate(T2, INF) is INF
    assert evaluate(P("(z+1/z)/2"), QI(0)) is INF
    assert evaluate(P("(z+1/z)/2"), INF) is INF
    assert evaluate(P("1/(z^2-2)"), INF) == QI(0)


@pytest.mark.parametrize("outer,inner", [
    ("2*z^2-1", "(z+1/z)/2"),
    ("(z^2+1)/(z-3)", "i*z^3-z"),
    ("(w+1)^4/(16*w*(w-1)^2)", "z^2"),
])
def test_compose_matches_sympy(outer, inner):
    f, g = P(outer.replace("w", "z")), P(inner)
    h = compose(f, g)
    ref = sp.cancel(ratfun_to_sympy(f).subs(zs, ratfun_to_sympy(g)))
    assert sp.simplify(ratfun_to_sympy(h) - ref) == 0
    assert h.degree == f.degree * g.degree


def test_iterate_and_equals():
    f = P("z^2")
    assert equals(iterate(f, 3), P("z^8"))
    assert not equals(iterate(f, 2), P("z^8"))


def test_derivative_matches_sympy():
    f = P("(z^3+i)/(2*z-1)")
    assert sp.simplify(ratfun_to_sympy(derivative(f)) - sp.diff(ratfun_to_sympy(f), zs)) == 0


def test_poly_gcd_and_squarefree():
    a = P("(z-1)^2*(z+i)").num
    b = P("(z-1)*(z-2)").num
    assert poly_gcd(a, b).monic() == P("z-1").num
    p = P("(z-1)^3*(z+2)^2*(z-5)").num
    parts = squarefree_decomposition(p)
    ref = {m: sp.Poly(q, zs).monic() for q, m in sp.sqf_list(poly_to_sympy(p))[1]}
    assert set(parts) == set(ref)
    for m, q in parts.items():
        assert sp.expand(poly_to_sympy(q.monic()) - ref[m].as_expr()) == 0


def test_resultant_matches_sympy():
    w = sp.Symbol("w")
    # F = w^2 - z, G = w^3 + z w - 1 as polynomials in w over Q(i)[z]
    F = [P("-z").num, Poly([QI(0)]), Poly([QI(1)])]
    G = [Poly([QI(-1)]), P("z").num, Poly([QI(0)]), Poly([QI(1)])]
    r = resultant(F, G)
    ref = sp.resultant(w**2 - zs, w**3 + zs * w - 1, w)
    assert sp.expand(poly_to_sympy(r) - ref) == 0 or sp.expand(poly_to_sympy(r) + ref) == 0


def test_subresultant_gcd():
    # gcd over Q(z) of (w - z)(w + 1) and (w - z)(w - 2) is w - z
    F = [P("-z").num, P("1-z").num, Poly([QI(1)])]
    G = [P("2*z").num, P("-2-z").num, Poly([QI(1)])]
    g = subresultant_gcd(F, G)
    assert len(g) == 2
    ratio = sp.cancel(poly_to_sympy(g[0]) / poly_to_sympy(g[1]))
    assert sp.simplify(ratio + zs) == 0


def test_roots_with_multiplicity_certified():
    p = P("(z-1)^3*(z^2+2)*(z-i/3)").num
    rs = roots_with_multiplicity(p)
    assert sorted(r.multiplicity for r in rs) == [1, 1, 1, 3]
    with mpmath.workprec(256):
        for r in rs:
            assert r.error_radius < mpmath.mpf(2) ** -100
            # independent check: sympy's own roots of the squarefree factor
            ref = [complex(v) for v in sp.Poly(poly_to_sympy(r.factor), zs).nroots(n=30)]
            assert min(abs(complex(r.value) - v) for v in ref) < 1e-12


def test_exact_fiber_examples():
    assert exact_fiber(P("z^2"), QI(0)) == [(QI(0), 2)]
    fib = exact_fiber(P("z^2"), INF)
    assert fib == [(INF, 2)]
    f = P("(z+1/z)/2")
    fib = exact_fiber(f, QI(1))
    assert fib == [(QI(1), 2)]
    assert sum(m for _, m in exact_fiber(f, QI(3))) == 2
    assert is_critical_value_exact(f, QI(-1))
    assert not is_critical_value_exact(f, QI(0))


def test_local_degree_examples():
    assert local_degree(P("z^3"), QI(0)) == 3
    assert local_degree(P("z^3"), INF) == 3
    assert local_degree(P("(z+1/z)/2"), QI(1)) == 2
    assert local_degree(P("(z+1/z)/2"), QI(2)) == 1
    assert local_degree(P("1/(z^2-2)"), INF) == 2


def test_same_point_exact_and_approx():
    rs = roots_with_multiplicity(P("z^2-4").num)
    pts = sorted((r.point() for r in rs), key=lambda p: complex(p.value).real)
    assert same_point(pts[1], QI(2))
    assert not same_point(pts[0], QI(2))
    assert same_point(INF, INF)
    assert qi_to_sympy(QI(1, -1)) == 1 - sp.I
