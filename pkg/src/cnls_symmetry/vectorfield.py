"""Vector-field realisation of Lie elements on (t, x, y, u, v).

This is an independent check on the bracket formula: each generator becomes a
first-order differential operator with sympy coefficients and brackets are
computed as operator commutators.  The complex field u is treated as an
independent coordinate, so ``i`` appears explicitly in the u-coefficients.
"""

from __future__ import annotations

import sympy as sp
from sympy.printing.precedence import precedence

from .exprfield import to_sympy
from .exprfield.parser import GrammarPrinter

t, x, y, u, v = sp.symbols("t x y u v")
COORDS = (t, x, y, u, v)
p, q = sp.symbols("p q")
I = sp.I


def vector_field(V) -> dict[sp.Symbol, sp.Expr]:
    """Coefficients of d/dt, d/dx, d/dy, d/du, d/dv for the element ``V``."""
    f, g, h, k = (to_sympy(lbl, t) for lbl in V.labels)
    d1 = lambda e: sp.diff(e, t)  # noqa: E731
    d2 = lambda e: sp.diff(e, t, 2)  # noqa: E731
    d3 = lambda e: sp.diff(e, t, 3)  # noqa: E731
    quad = q * x**2 - p * y**2
    return {
        t: h,
        x: f + d1(h) * x / 2,
        y: g + d1(h) * y / 2,
        u: (
            -d1(h) / 2
            - I * quad * d2(h) / (8 * p * q)
            - I * x * d1(f) / (2 * p)
            + I * y * d1(g) / (2 * q)
            + I * k
        )
        * u,
        v: -d1(h) * v + quad * d3(h) / (16 * p * q) + x * d2(f) / (4 * p)
        - y * d2(g) / (4 * q) - d1(k) / 2,
    }


def commutator(A: dict, B: dict) -> dict:
    """Operator commutator ``A B - B A`` of two vector fields."""
    out = {}
    for c in COORDS:
        val = sum(A[i] * sp.diff(B[c], i) - B[i] * sp.diff(A[c], i) for i in COORDS)
        out[c] = val
    return out


def fields_equal(A: dict, B: dict) -> bool:
    return all(sp.expand(A[c] - B[c]) == 0 for c in COORDS)


def field_difference(A: dict, B: dict) -> dict:
    return {c: sp.expand(A[c] - B[c]) for c in COORDS}


class _FieldPrinter(GrammarPrinter):
    def _print_ImaginaryUnit(self, expr):
        return "i"

    def _print_Derivative(self, expr):
        fn = expr.expr
        order = sum(n for _, n in expr.variable_count)
        return f"{fn.func.__name__}{chr(39) * order}(t)"


_PR = _FieldPrinter({"order": "lex"})
_NAMES = {t: "t", x: "x", y: "y", u: "u", v: "v"}


def render_field(F: dict) -> str:
    """Plain-text operator form such as ``t·∂t + x/2·∂x``."""
    parts: list[str] = []
    for c in COORDS:
        coef = sp.factor_terms(sp.expand(F[c]))
        if coef == 0:
            continue
        neg = coef.could_extract_minus_sign()
        if neg:
            coef = -coef
        op = f"∂{_NAMES[c]}"
        if coef == 1:
            body = op
        else:
            txt = _PR.doprint(coef).replace("*", "·")
            if precedence(coef) < precedence(sp.Mul(2, t, evaluate=False)):
                txt = f"({txt})"
            body = f"{txt}·{op}"
        if not parts:
            parts.append(f"−{body}" if neg else body)
        else:
            parts.append(f" − {body}" if neg else f" + {body}")
    return "".join(parts) if parts else "0"
