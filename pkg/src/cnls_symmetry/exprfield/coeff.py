"""Coefficient field helpers.

Coefficients are sympy expressions kept in a canonical rational-function
form over the parameter symbols.  Opaque constants such as ``2**alpha``,
``exp(a)``, ``cos(a)`` or ``log(2)`` behave as extra transcendental
generators and compare syntactically.

Rationals take a fast path; monomials are already canonical under sympy's
automatic evaluation, so ``cancel`` only runs on expressions containing sums.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

import sympy as sp
from sympy.polys.fields import FracField

Coeff = sp.Expr
CoeffLike = Union[sp.Expr, int, Fraction, str]

ZERO = sp.Integer(0)
ONE = sp.Integer(1)
HALF = sp.Rational(1, 2)

_SYMBOLS: dict[str, sp.Symbol] = {}


def sym(name: str) -> sp.Symbol:
    """Return the shared parameter symbol called ``name``."""
    s = _SYMBOLS.get(name)
    if s is None:
        s = sp.Symbol(name)
        _SYMBOLS[name] = s
    return s


def to_coeff(x: CoeffLike) -> Coeff:
    """Convert ints, Fractions, strings or sympy values to a canonical Coeff."""
    if isinstance(x, sp.Basic):
        return canon(x)
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, int):
        return sp.Integer(x)
    if isinstance(x, Fraction):
        return sp.Rational(x.numerator, x.denominator)
    if isinstance(x, str):
        from .parser import parse_coeff

        return parse_coeff(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a coefficient")


def canon(e: sp.Expr) -> Coeff:
    """Canonical form: reduced fraction of expanded polynomials."""
    if e.is_Rational:
        return e
    return _canon_slow(e)


@lru_cache(maxsize=None)
def _field(gens: tuple) -> FracField:
    return FracField(gens, sp.QQ)


def _plain_rational(e: sp.Expr) -> bool:
    """Rational function of plain symbols (no opaque constants)."""
    for a in sp.preorder_traversal(e):
        if a.is_Pow:
            if not a.exp.is_Integer:
                return False
        elif not (a.is_Add or a.is_Mul or a.is_Symbol or a.is_Rational):
            return False
    return True


@lru_cache(maxsize=1 << 16)
def _canon_slow(e: sp.Expr) -> Coeff:
    if not e.has(sp.Add):
        return e
    if _plain_rational(e):
        # same normal form as cancel, computed in a sparse fraction field
        gens = tuple(sorted(e.free_symbols, key=lambda s: s.name))
        return _field(gens).from_expr(e).as_expr()
    e = sp.expand_power_exp(e)
    out = sp.cancel(e)
    return out


def _like_terms(a: Coeff, b: Coeff, sign: int) -> Coeff:
    # r1*m + r2*m with the same Add-free monomial m skips cancel
    ra, ma = a.as_coeff_Mul()
    rb, mb = b.as_coeff_Mul()
    if ma == mb and not ma.has(sp.Add):
        r = ra + sign * rb
        return ZERO if r == 0 else r * ma
    return canon(a + b if sign > 0 else a - b)


def total(items) -> Coeff:
    """Canonical sum of already canonical coefficients, normalized once."""
    if len(items) == 1:
        return canon(items[0])
    rat = sp.Integer(0)
    like: dict = {}
    for c in items:
        if c.is_Rational:
            rat += c
            continue
        r, m = c.as_coeff_Mul()
        if m.has(sp.Add):
            like[c] = like.get(c, 0) + 1
        else:
            like[m] = like.get(m, 0) + r
    rest = [m * r for m, r in like.items() if r != 0]
    if not rest:
        return rat
    if len(rest) == 1 and not rest[0].has(sp.Add):
        return canon(rest[0] + rat) if rat else rest[0]
    return canon(sp.Add(rat, *rest))


def add(a: Coeff, b: Coeff) -> Coeff:
    if not isinstance(a, sp.Basic):
        a = to_coeff(a)
    if not isinstance(b, sp.Basic):
        b = to_coeff(b)
    if a.is_Rational and b.is_Rational:
        return a + b
    return _like_terms(a, b, 1)


def sub(a: Coeff, b: Coeff) -> Coeff:
    if not isinstance(a, sp.Basic):
        a = to_coeff(a)
    if not isinstance(b, sp.Basic):
        b = to_coeff(b)
    if a.is_Rational and b.is_Rational:
        return a - b
    return _like_terms(a, b, -1)


def mul(a: Coeff, b: Coeff) -> Coeff:
    if not isinstance(a, sp.Basic):
        a = to_coeff(a)
    if not isinstance(b, sp.Basic):
        b = to_coeff(b)
    if a.is_Rational and b.is_Rational:
        return a * b
    return canon(a * b)


def div(a: Coeff, b: Coeff) -> Coeff:
    if not isinstance(a, sp.Basic):
        a = to_coeff(a)
    if not isinstance(b, sp.Basic):
        b = to_coeff(b)
    if is_zero(b):
        raise ZeroDivisionError("division by a zero coefficient")
    if a.is_Rational and b.is_Rational:
        return a / b
    return canon(a / b)


def power(a: Coeff, e: Coeff) -> Coeff:
    """``a**e`` with integer exponents kept exact and others opaque."""
    if e.is_Integer:
        if e < 0 and is_zero(a):
            raise ZeroDivisionError("zero to a negative power")
        return canon(a**e)
    return canon(sp.Pow(a, e))


def is_zero(a: Coeff) -> bool:
    if a.is_Rational:
        return a == 0
    return canon(a) == 0


def equal(a: Coeff, b: Coeff) -> bool:
    return is_zero(sub(a, b))


def is_rational(a: Coeff) -> bool:
    return bool(a.is_Rational)


def as_fraction(a: Coeff) -> Fraction:
    if not a.is_Rational:
        raise ValueError(f"coefficient {a} is not rational")
    return Fraction(int(a.p), int(a.q))


def free_names(a: Coeff) -> set[str]:
    return {s.name for s in a.free_symbols}


def numeric(a: Coeff, params: dict[str, float]) -> complex:
    """Evaluate with all free symbols bound to floats."""
    if a.is_Rational:
        return complex(float(a))
    missing = free_names(a) - set(params)
    if missing:
        from .errors import UnboundSymbol

        raise UnboundSymbol(f"unbound symbols: {', '.join(sorted(missing))}")
    subs = {sym(n): params[n] for n in free_names(a)}
    return complex(sp.N(a.subs(subs), 30))
