"""Exact canonical arithmetic for the univariate labeling-function class."""

from . import coeff
from .coeff import canon, sym, to_coeff
from .errors import (
    DomainError,
    ExprError,
    NotElementary,
    ParseError,
    UnboundSymbol,
    UnsupportedClass,
    UnsupportedConstruct,
)
from .expform import EONE, EZERO, ExponentForm
from .funcexpr import (
    COS,
    NONE,
    ONE,
    SIN,
    T,
    ZERO,
    FuncExpr,
    Term,
    antidifferentiate,
    arith,
    as_funcexpr,
    differentiate,
    equals,
    eval_complex,
    eval_numeric,
    is_zero,
    nth_derivative,
    substitute_funcs,
    substitute_params,
    substitute_scale,
    substitute_shift,
    to_sympy,
)
from .parser import parse_coeff, parse_expr, render, render_coeff

E = parse_expr

__all__ = [
    "coeff", "canon", "sym", "to_coeff", "DomainError", "ExprError", "NotElementary",
    "ParseError", "UnboundSymbol", "UnsupportedClass", "UnsupportedConstruct", "EONE",
    "EZERO", "ExponentForm", "COS", "NONE", "ONE", "SIN", "T", "ZERO", "FuncExpr", "Term",
    "antidifferentiate", "arith", "as_funcexpr", "differentiate", "equals", "eval_complex",
    "eval_numeric", "is_zero", "nth_derivative", "substitute_funcs", "substitute_params",
    "substitute_scale", "substitute_shift", "to_sympy", "parse_coeff", "parse_expr", "render",
    "render_coeff", "E",
]
