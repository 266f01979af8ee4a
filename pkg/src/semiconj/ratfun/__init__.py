"""Exact rational functions over Q(i) and certified numerics on the sphere."""

from .parse import ParseError, parse_expression
from .points import INF, ApproxPoint, Ball, Infinity, as_point, format_point, point_to_json, same_point
from .poly import Poly, poly_gcd, squarefree_decomposition
from .rational import (
    RatFun,
    Z,
    complex_eval,
    compose,
    derivative,
    equals,
    evaluate,
    iterate,
    local_degree,
    moebius_conjugate,
    moebius_inverse,
)
from .roots import ApproxRoot, RootPrecisionError, roots_as_points, roots_with_multiplicity
from .scalar import I, ONE, QI, ZERO, as_qi

__all__ = [
    "ParseError", "parse_expression", "INF", "ApproxPoint", "Ball", "Infinity", "as_point",
    "format_point", "point_to_json", "same_point", "Poly", "poly_gcd", "squarefree_decomposition",
    "RatFun", "Z", "complex_eval", "compose", "derivative", "equals", "evaluate", "iterate",
    "local_degree", "moebius_conjugate", "moebius_inverse", "ApproxRoot", "RootPrecisionError",
    "roots_as_points", "roots_with_multiplicity", "I", "ONE", "QI", "ZERO", "as_qi",
]
