"""Exact scalar field, expression parser and linear algebra."""

from .matrix import ExactMatrix, RowEchelon, SingularMatrix, dot, exact_nullspace
from .parser import ExpressionSyntaxError, parse_expression, tokenize
from .scalar import (
    DivisionByZero,
    ExpGenerator,
    FieldError,
    PoleError,
    ScalarExpr,
    ScalarField,
    UndeclaredSymbol,
    find_witness,
)


def differentiate(f: ScalarExpr, var: str) -> ScalarExpr:
    return f.diff(var)


def evaluate_at(f: ScalarExpr, point, generator_values=None):
    return f.evaluate_at(point, generator_values)


__all__ = [
    "DivisionByZero",
    "ExactMatrix",
    "ExpGenerator",
    "ExpressionSyntaxError",
    "FieldError",
    "PoleError",
    "RowEchelon",
    "ScalarExpr",
    "ScalarField",
    "SingularMatrix",
    "UndeclaredSymbol",
    "differentiate",
    "dot",
    "evaluate_at",
    "exact_nullspace",
    "find_witness",
    "parse_expression",
    "tokenize",
]
