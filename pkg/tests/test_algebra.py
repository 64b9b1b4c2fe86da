import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnls_symmetry.algebra import (
    FlowSpec,
    NonNilpotent,
    abstract,
    bracket,
    exp_ad,
    flow,
    jacobi_defect,
    normalize_to_Z1,
    parse_element,
    reflect,
    render_element,
    render_vector_field,
    replay,
)
from cnls_symmetry.exprfield import parse_coeff, sym
from cnls_symmetry.suites import random_element

P = parse_element


def test_bracket_examples():
    assert bracket(P("Z: 1"), P("Z: t^2")) == P("Z: 2*t")
    assert bracket(P("Z: t"), P("X: 1")) == P("X: -1/2")
    assert bracket(P("X: t"), P("X: 1")) == P("W: 1/(2*p)")
    assert bracket(P("W: k(t)"), P("W: K(t)")).is_zero()


def test_bracket_is_antisymmetric():
    a, b = P("Z: t^2; X: t"), P("Y: exp(-t); W: 1")
    assert bracket(a, b) == -bracket(b, a)


def test_jacobi_abstract_triples():
    H, F, f, h, k = (abstract("Z", "H"), abstract("X", "F"), abstract("X", "f"),
                     abstract("Z", "h"), abstract("W", "k"))
    assert jacobi_defect(H, F, f).is_zero()
    assert jacobi_defect(H, h, k).is_zero()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_jacobi_random(seed):
    import random

    rng = random.Random(seed)
    a, b, c = (random_element(rng) for _ in range(3))
    assert jacobi_defect(a, b, c, p=2, q=3).is_zero()


def test_exp_ad_examples():
    assert exp_ad(P("W: t"), 1, P("Z: 1")) == P("Z: 1; W: 1")
    assert exp_ad(P("X: t"), parse_coeff("2*p"), P("X: 1")) == P("X: 1; W: -1")


def test_exp_ad_abstract_row():
    d = sym("delta")
    got = exp_ad(abstract("X", "F"), d, abstract("Z", "h"))
    fhat = "1/(4*p)*(1/2*F(t)*h'(t) - F'(t)*h(t))"
    fhat_d = "1/(4*p)*(1/2*F'(t)*h'(t) + 1/2*F(t)*h''(t) - F''(t)*h(t) - F'(t)*h'(t))"
    want = P(f"Z: h(t); X: -4*p*delta*{fhat}; "
             f"W: -delta^2*(F(t)*{fhat_d} - F'(t)*{fhat})")
    assert got == want


def test_exp_ad_non_nilpotent():
    with pytest.raises(NonNilpotent):
        exp_ad(P("Z: 1"), 1, P("X: exp(t)"))


def test_flows():
    assert flow(FlowSpec.translate(sym("delta")), P("Z: 1")) == P("Z: 1")
    assert flow(FlowSpec.translate(parse_coeff("-a/2")), P("Z: 2*t + a")) == P("Z: 2*t")
    assert flow(FlowSpec.scale(sym("s")), P("X: t")) == P("X: s^(-1/2)*t")


def test_scale_by_zero_rejected():
    with pytest.raises(ValueError):
        FlowSpec.scale(0)


def test_reflections():
    assert reflect("x", P("X: 1")) == P("X: -1")
    assert reflect("x", P("Z: h(t)")) == P("Z: h(t)")
    assert reflect("u", P("W: k(t)")) == P("W: k(t)")
    assert reflect("xy", P("X: 1; Y: 1")) == P("X: -1; Y: -1")


def test_reflection_is_automorphism():
    a, b = P("Z: t; X: t^2"), P("X: 1; Y: t; W: t")
    for axis in ("x", "y", "xy", "u"):
        assert reflect(axis, bracket(a, b)) == bracket(reflect(axis, a), reflect(axis, b))


def test_normalize_w_label():
    out, trace = normalize_to_Z1(P("Z: 1; W: t"))
    assert out == P("Z: 1")
    assert [(render_element(s.generator), s.delta) for s in trace] == [("W: -1/2*t^2", 1)]


def test_normalize_x_label_and_replay():
    V = P("Z: 1; X: exp(-t)")
    out, trace = normalize_to_Z1(V)
    assert out == P("Z: 1")
    assert replay(V, trace) == P("Z: 1")


def test_normalize_trivial():
    assert normalize_to_Z1(P("Z: 1")) == (P("Z: 1"), [])


def test_normalize_requires_unit_h():
    with pytest.raises(ValueError):
        normalize_to_Z1(P("Z: t"))


def test_vector_field_rendering():
    assert render_vector_field(P("W: 1")) == "i·u·∂u"
    assert render_vector_field(P("X: 1")) == "∂x"
    assert render_vector_field(P("Z: t")) == "t·∂t + x/2·∂x + y/2·∂y − u/2·∂u − v·∂v"
