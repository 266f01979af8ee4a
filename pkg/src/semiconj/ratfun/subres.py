"""Subresultant gcd and resultant for polynomials in ``w`` over the domain Q(i)[z].

A bivariate polynomial is a list of :class:`Poly` in ``z``: ``F[k]`` is the
coefficient of ``w**k``.  Working over the domain Q(i)[z] with pseudo-division
and exact quotients keeps everything polynomial; the gcd over the fraction
field Q(i)(z) is the primitive part of the last nonzero subresultant.
"""

from __future__ import annotations

from .poly import Poly, poly_gcd
from .scalar import ONE

__all__ = ["bivariate", "subresultant_gcd", "resultant", "wdeg"]

BiPoly = list  # list[Poly]


def _trim(F: BiPoly) -> BiPoly:
    F = list(F)
    while F and not F[-1]:
        F.pop()
    return F


def wdeg(F: BiPoly) -> int:
    return len(F) - 1


def _lc(F: BiPoly) -> Poly:
    return F[-1]


def bivariate(coeffs) -> BiPoly:
    return _trim(coeffs)


def _scale(F: BiPoly, c: Poly) -> BiPoly:
    return _trim([a * c for a in F])


def _exact_div(F: BiPoly, c: Poly) -> BiPoly:
    return _trim([a.exact_div(c) for a in F])


def _sub(F: BiPoly, G: BiPoly) -> BiPoly:
    n = max(len(F), len(G))
    zero = Poly()
    return _trim([(F[k] if k < len(F) else zero) - (G[k] if k < len(G) else zero) for k in range(n)])


def prem(F: BiPoly, G: BiPoly) -> BiPoly:
    """Pseudo-remainder: ``lc(G)^(deg F - deg G + 1) F mod G``."""
    if not G:
        raise ZeroDivisionError("pseudo-division by zero")
    dg = wdeg(G)
    lg = _lc(G)
    R = list(F)
    e = wdeg(F) - dg + 1
    while R and wdeg(R) >= dg:
        c = _lc(R)
        shift = wdeg(R) - dg
        # R = lg * R - c * w^shift * G
        R = _sub(_scale(R, lg), [Poly()] * shift + _scale(G, c))
        e -= 1
    if e > 0:
        R = _scale(R, lg ** e)
    return _trim(R)


def content(F: BiPoly) -> Poly:
    g = Poly()
    for a in F:
        g = poly_gcd(g, a)
        if g.degree == 0:
            break
    return g


def primitive_part(F: BiPoly) -> BiPoly:
    c = content(F)
    if not c:
        return F
    return _exact_div(F, c)


def subresultant_gcd(F: BiPoly, G: BiPoly) -> BiPoly:
    """gcd of ``F`` and ``G`` over Q(i)(z), returned primitive over Q(i)[z].

    Subresultant PRS with the Brown-Traub scaling.
    """
    F, G = _trim(F), _trim(G)
    if not F:
        return primitive_part(G)
    if not G:
        return primitive_part(F)
    if wdeg(F) < wdeg(G):
        F, G = G, F
    F, G = primitive_part(F), primitive_part(G)
    g = Poly.const(ONE)
    h = Poly.const(ONE)
    while True:
        delta = wdeg(F) - wdeg(G)
        R = prem(F, G)
        if not R:
            return primitive_part(G)
        if wdeg(R) == 0:
            return [Poly.const(ONE)]
        F, G = G, _exact_div(R, g * h ** delta)
        g = _lc(F)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))


def resultant(F: BiPoly, G: BiPoly) -> Poly:
    """``Res_w(F, G)`` as a polynomial in ``z`` (subresultant algorithm)."""
    F, G = _trim(F), _trim(G)
    if not F or not G:
        return Poly()
    s = 1
    if wdeg(F) < wdeg(G):
        F, G = G, F
        if wdeg(F) % 2 == 1 and wdeg(G) % 2 == 1:
            s = -s
    if wdeg(G) == 0:
        return _lc(G) ** wdeg(F) * s
    g = Poly.const(ONE)
    h = Poly.const(ONE)
    while True:
        delta = wdeg(F) - wdeg(G)
        if wdeg(F) % 2 == 1 and wdeg(G) % 2 == 1:
            s = -s
        R = prem(F, G)
        if not R:
            return Poly()
        F, G = G, _exact_div(R, g * h ** delta)
        g = _lc(F)
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g ** delta).exact_div(h ** (delta - 1))
        if wdeg(G) == 0:
            dF = wdeg(F)
            lG = _lc(G)
            if dF == 1:
                h_final = lG
            else:
                h_final = (lG ** dF).exact_div(h ** (dF - 1))
            return h_final * s
