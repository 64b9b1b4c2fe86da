import math
import random

import pytest
import sympy as sp
from hypothesis import given, settings

from cnls_symmetry.exprfield import (
    COS,
    NONE,
    SIN,
    FuncExpr,
    NotElementary,
    ParseError,
    UnsupportedClass,
    antidifferentiate,
    arith,
    differentiate,
    equals,
    eval_numeric,
    is_zero,
    parse_coeff,
    parse_expr,
    render,
    substitute_scale,
    substitute_shift,
    sym,
)
from cnls_symmetry.exprfield import coeff as C

from gen import elementary_funcexprs, funcexprs
from properties import _close, _num, check_case, sympy_derivative_agrees

E = parse_expr


# --- parsing -----------------------------------------------------------------


def test_parse_polynomial_terms():
    e = E("t^2 - 3*t")
    assert [(t.coeff, t.tpow.as_int()) for t in e.terms] == [(-3, 1), (1, 2)]


def test_parse_exp_cos_is_one_term():
    (term,) = E("exp(-a*t)*cos(t)").terms
    assert term.trig == COS
    assert term.expfreq.lin == (("a", -1),)
    assert term.freq.as_int() == 1


def test_parse_unknown_function_orders():
    (term,) = E("f'(t)*h(t)").terms
    assert term.ufuncs == (("f", 1), ("h", 0))


@pytest.mark.parametrize("text", ["t^", "cos(t", "2**", "t + + ", "sqrt(t)"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as info:
        E(text)
    assert info.value.position >= 0


# --- arithmetic --------------------------------------------------------------


def test_product_to_sum():
    e = arith("mul", E("cos(t)"), E("sin(t)"))
    assert e == E("1/2*sin(2*t)")
    assert math.isclose(eval_numeric(e, 0.7), math.cos(0.7) * math.sin(0.7))


def test_pythagorean_identity():
    e = arith("add", arith("mul", E("cos(t)"), E("cos(t)")), arith("mul", E("sin(t)"), E("sin(t)")))
    assert e == E("1")
    assert is_zero(e - E("1"))


def test_scalar_mul_symbolic():
    (term,) = arith("scalar_mul", sym("eps"), E("t")).terms
    assert term.coeff == sym("eps") and term.tpow.as_int() == 1


def test_neg_and_zero():
    assert is_zero(E("f'(t)") - E("f'(t)"))
    assert arith("neg", E("t")) == E("-t")


# --- calculus ----------------------------------------------------------------


def test_power_rule():
    d = differentiate(E("t^alpha"))
    assert d == E("alpha*t^(alpha-1)")
    assert math.isclose(eval_numeric(differentiate(E("t^3")), 2), 12)
    assert abs(eval_numeric(d - E("alpha*t^(alpha-1)"), 2, {"alpha": 3})) < 1e-12


def test_product_rule_exp_cos():
    assert differentiate(E("exp(-a*t)*cos(t)")) == E("-a*exp(-a*t)*cos(t) - exp(-a*t)*sin(t)")


def test_leibniz_unknown_functions():
    assert differentiate(E("f(t)*g'(t)")) == E("f'(t)*g'(t) + f(t)*g''(t)")


@pytest.mark.parametrize(
    "src, prim",
    [
        ("2*t", "t^2"),
        ("1/t", "ln(t)"),
        ("exp(-t)*sin(t)", "-1/2*exp(-t)*(sin(t) + cos(t))"),
        ("ln(t)", "t*ln(t) - t"),
    ],
)
def test_antiderivatives(src, prim):
    assert antidifferentiate(E(src)) == E(prim)


def test_by_parts_identity():
    assert equals(differentiate(E("t*ln(t) - t")), E("ln(t)"))


def test_non_elementary_primitive():
    with pytest.raises(NotElementary):
        antidifferentiate(E("exp(t)/t"))


# --- substitution and evaluation ---------------------------------------------


def test_scale_substitution():
    assert substitute_scale(E("t^alpha"), 2) == E("2^alpha*t^alpha")


def test_shift_substitution():
    assert substitute_shift(E("2*t + a"), parse_coeff("-a/2")) == E("2*t")


def test_shift_of_log_leaves_class():
    with pytest.raises(UnsupportedClass):
        substitute_shift(E("ln(t)"), 1)


def test_eval_values():
    assert eval_numeric(E("t^2"), 3) == 9
    assert eval_numeric(E("exp(-a*t)*cos(t)"), 0, {"a": 5}) == 1


def test_render_is_stable():
    for text in ["t^2 - 3*t", "exp(-a*t)*cos(t)", "1/2*sin(2*t)", "f'(t)*h(t)"]:
        e = E(text)
        assert E(render(e)) == e


# --- coefficients --------------------------------------------------------------


def test_canon_identifies_equal_rational_functions():
    p, q = sym("p"), sym("q")
    a = C.canon(1 / (2 * p) + 1 / (2 * q))
    b = C.canon((p + q) / (2 * p * q))
    assert a == b


def test_total_matches_repeated_add():
    rng = random.Random(1)
    items = [sp.Rational(rng.randint(-5, 5), rng.randint(1, 4)) * sym("p") ** rng.randint(0, 2) for _ in range(10)]
    acc = C.ZERO
    for x in items:
        acc = C.add(acc, x)
    assert C.total(items) == acc


# --- properties ----------------------------------------------------------------


def test_seeded_law_cases():
    rng = random.Random(42)
    for _ in range(100):
        assert check_case(rng) == []


@settings(max_examples=60, deadline=None)
@given(funcexprs(), funcexprs())
def test_ring_laws(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a - b) + b == a
    assert _close(_num(a + b), _num(a) + _num(b))


@settings(max_examples=40, deadline=None)
@given(elementary_funcexprs())
def test_primitive_round_trip(e):
    assert differentiate(antidifferentiate(e)) == e


@settings(max_examples=40, deadline=None)
@given(funcexprs())
def test_canonical_idempotence(e):
    assert parse_expr(render(e)) == e
    assert FuncExpr(e.terms) == e


@settings(max_examples=25, deadline=None)
@given(funcexprs(max_terms=2))
def test_derivative_matches_sympy(e):
    assert sympy_derivative_agrees(e)


def test_trig_kinds_are_distinct():
    assert len({NONE, COS, SIN}) == 3
