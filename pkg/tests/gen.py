"""Seeded random generators shared by the property tests and the acceptance suite."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from cnls_symmetry.exprfield import COS, NONE, SIN, FuncExpr, Term, ExponentForm
from cnls_symmetry.exprfield import coeff as C

TPOWS = [0, 0, 1, 2, 3, -1, Fraction(1, 2)]
EXPFREQS = [0, 0, 0, 1, -1, 2]
FREQS = [1, 2, 3]


def random_coeff(rng: random.Random) -> sp.Expr:
    if rng.random() < 0.1:
        return C.mul(sp.Rational(rng.randint(1, 3)), C.sym("a"))
    return sp.Rational(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))


def random_term(rng: random.Random) -> Term:
    trig = rng.choice([NONE, NONE, COS, SIN])
    return Term(
        random_coeff(rng),
        ExponentForm.of(rng.choice(TPOWS)),
        ExponentForm.of(rng.choice(EXPFREQS)),
        rng.choice([0, 0, 0, 1]),
        trig,
        ExponentForm.of(rng.choice(FREQS)) if trig != NONE else ExponentForm.of(0),
    )


def random_funcexpr(rng: random.Random, max_terms: int = 3) -> FuncExpr:
    return FuncExpr([random_term(rng) for _ in range(rng.randint(1, max_terms))])


def elementary_funcexpr(rng: random.Random, max_terms: int = 3) -> FuncExpr:
    """Terms whose primitives stay in the class (no ln, no t^-1 with exp or trig)."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        trig = rng.choice([NONE, COS, SIN])
        terms.append(Term(
            random_coeff(rng),
            ExponentForm.of(rng.choice([0, 1, 2])),
            ExponentForm.of(rng.choice([0, 1, -1])),
            0,
            trig,
            ExponentForm.of(rng.choice(FREQS)) if trig != NONE else ExponentForm.of(0),
        ))
    return FuncExpr(terms)


@st.composite
def funcexprs(draw, max_terms: int = 3):
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return random_funcexpr(random.Random(seed), max_terms)


@st.composite
def elementary_funcexprs(draw, max_terms: int = 3):
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return elementary_funcexpr(random.Random(seed), max_terms)


def random_rational(rng: random.Random, lo: int = -4, hi: int = 4) -> sp.Rational:
    return sp.Rational(rng.randint(lo, hi), rng.randint(1, 3))


def random_invertible(rng: random.Random) -> sp.Matrix:
    while True:
        P = sp.Matrix(2, 2, lambda i, j: sp.Integer(rng.randint(-3, 3)))
        if P.det() != 0:
            return P


def random_m(rng: random.Random) -> sp.Matrix:
    """Random rational 2x2 matrix; every standard class occurs with fair frequency."""
    kind = rng.choice(["generic", "zero", "scalar", "rank1", "nilpotent", "jordan", "complex", "real"])
    if kind == "generic":
        return sp.Matrix(2, 2, lambda i, j: random_rational(rng))
    if kind == "zero":
        base = sp.zeros(2, 2)
    elif kind == "scalar":
        base = sp.eye(2)
    elif kind == "rank1":
        base = sp.Matrix([[1, 0], [0, 0]])
    elif kind == "nilpotent":
        base = sp.Matrix([[0, 0], [1, 0]])
    elif kind == "jordan":
        base = sp.Matrix([[1, 0], [1, 1]])
    elif kind == "complex":
        base = sp.Matrix([[random_rational(rng, 0, 4), 1], [-1, random_rational(rng, 0, 4)]])
        base[1, 1] = base[0, 0]
    else:
        a = random_rational(rng)
        base = sp.Matrix([[1, 0], [0, a if a != 0 else sp.Rational(1, 2)]])
    P = random_invertible(rng)
    s = random_rational(rng, 1, 5)
    return (s * P * base * P.inv()).applyfunc(sp.nsimplify)
