"""Exact and certified-numeric tools for semiconjugate rational functions ``A o X = X o B``."""

from .ratfun import INF, QI, RatFun, compose, equals, iterate, parse_expression
from .semiconjugacy import (
    NotSemiconjugateError,
    Triple,
    fiber_field_degree,
    is_primitive,
    reduce_to_primitive,
    verify_semiconjugacy,
)

__version__ = "0.1.0"

__all__ = [
    "INF", "QI", "RatFun", "compose", "equals", "iterate", "parse_expression",
    "NotSemiconjugateError", "Triple", "fiber_field_degree", "is_primitive",
    "reduce_to_primitive", "verify_semiconjugacy",
]
