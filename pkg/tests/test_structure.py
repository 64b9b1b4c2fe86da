import random

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cnls_symmetry.algebra import bracket, parse_element
from cnls_symmetry.structure import (
    LinearlyDependent,
    MClass,
    NotClosed,
    analyze,
    center_dim,
    classify_dim2,
    classify_M,
    killing_form,
    rank,
    series,
    sl2_adapted_basis,
    standard_form,
    structure_constants,
)
from cnls_symmetry.vectorfield import commutator, fields_equal, vector_field

from gen import random_invertible, random_m, random_rational
from oracles import agrees, brute_force_class, classifier_as_numeric, numeric_class

P = parse_element


def sc_of(*texts):
    return structure_constants([P(t) for t in texts])


# --- rank and closure ----------------------------------------------------------


def test_rank_independent():
    assert rank([P("X: 1"), P("X: t")]).rank == 2


def test_rank_dependency_is_kernel_vector():
    r = rank([P("X: 1"), P("X: 2")])
    assert r.rank == 1
    a, b = r.dependency
    assert a * 1 + b * 2 == 0 and (a, b) != (0, 0)


def test_rank_generic_side_condition():
    r = rank([P("Z: 1"), P("X: 1; Y: alpha"), P("X: beta; Y: gamma; W: mu")])
    assert r.rank == 3
    assert r.side_conditions == ["-alpha*beta + gamma != 0"]


def test_sl2_structure_constants():
    sc = sc_of("Z: 1", "Z: t", "Z: t^2")
    assert sc.c == {(0, 1): (1, 0, 0), (0, 2): (0, 2, 0), (1, 2): (0, 0, 1)}


def test_commuting_pair():
    assert sc_of("Z: 1", "X: 1").c == {(0, 1): (0, 0)}


def test_not_closed_residual():
    with pytest.raises(NotClosed) as info:
        sc_of("Z: 1", "X: t")
    assert info.value.residual == P("X: 1")


def test_dependent_basis_rejected():
    with pytest.raises(LinearlyDependent):
        sc_of("Z: 1", "Z: 2")


# --- series ------------------------------------------------------------------------


def test_sl2_is_perfect():
    assert series(sc_of("Z: 1", "Z: t", "Z: t^2")).derived == [3, 3]


def test_abelian_w_chain():
    sc = sc_of("W: 1", "W: t", "W: t^2")
    assert series(sc).derived == [3, 0]
    assert center_dim(sc) == 3
    assert killing_form(sc) == sp.zeros(3, 3)


def test_killing_forms():
    assert killing_form(sc_of("Z: 1", "Z: t", "Z: t^2")).det() != 0
    k = killing_form(sc_of("Z: 1", "Z: t"))
    assert k.det() == 0 and sum(x != 0 for x in k) == 1


# --- dimension two and three ---------------------------------------------------------


def test_dim2_cases():
    assert classify_dim2(sc_of("Z: 1", "W: 1")).abelian
    res = classify_dim2(sc_of("Z: 1", "Z: t"))
    assert not res.abelian and res.change_of_basis == [[1, 0], [0, 1]]
    assert not classify_dim2(sc_of("W: exp(-t)", "Z: 1")).abelian


def test_adapted_basis_gives_unit_bracket():
    for texts in [("Z: t", "Z: 1"), ("Z: 1", "W: exp(-t)"), ("Z: 1", "Z: 3*t")]:
        gens = [P(t) for t in texts]
        res = classify_dim2(structure_constants(gens))
        (a, b), (c, d) = res.change_of_basis
        A1 = gens[0].scale(a) + gens[1].scale(b)
        A2 = gens[0].scale(c) + gens[1].scale(d)
        assert bracket(A1, A2) == A1


def test_dim3_sl2():
    rep = analyze(sc_of("Z: 1", "Z: t", "Z: t^2"))
    assert rep.verdict == "sl2"
    assert sl2_adapted_basis(sc_of("Z: 1", "Z: t", "Z: t^2")) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_dim3_nilpotent_m():
    rep = analyze(sc_of("Z: 1", "W: 1", "W: t"))
    assert rep.verdict == "solvable" and rep.m_class.tag == "M3_nilpotent"


def test_dim3_rank_one_m():
    rep = analyze(sc_of("X: 1", "Y: exp(-t)", "Z: 1"))
    assert rep.verdict == "solvable" and rep.m_class.tag == "M2_rank1_diag"


# --- M classification ------------------------------------------------------------------


@pytest.mark.parametrize(
    "m, tag, alpha",
    [
        ([[0, 0], [0, 0]], "M1_zero", None),
        ([[2, 0], [0, 2]], "M4_diag", 1),
        ([[1, 0], [0, 0]], "M2_rank1_diag", None),
        ([[0, 0], [1, 0]], "M3_nilpotent", None),
        ([[1, 0], [1, 1]], "M6_jordan", None),
        ([[2, 0], [0, 1]], "M4_diag", sp.Rational(1, 2)),
        ([[1, 0], [0, -3]], "M4_diag", -sp.Rational(1, 3)),
        ([[0, 1], [-1, 0]], "M5_complex", 0),
        ([[1, 1], [-1, 1]], "M5_complex", 1),
    ],
)
def test_classify_m_standard(m, tag, alpha):
    mc = classify_M(m)
    assert mc == MClass(tag, alpha)


def test_standard_form_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        mc = classify_M(random_m(rng))
        assert classify_M(standard_form(mc)) == mc


def test_oracle_agrees_on_standard_forms():
    for m in ([[1, 0], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [1, 1]], [[3, 1], [-1, 3]]):
        assert agrees(numeric_class(sp.Matrix(m)), classifier_as_numeric(classify_M(m)))


def test_oracle_agreement_seeded():
    rng = random.Random(7)
    for _ in range(50):
        m = random_m(rng)
        assert agrees(brute_force_class(m, rng), classifier_as_numeric(classify_M(m)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_classify_m_invariance(seed):
    rng = random.Random(seed)
    m = random_m(rng)
    Pm = random_invertible(rng)
    s = random_rational(rng, 1, 5) * rng.choice([1, -1])
    assert classify_M(m) == classify_M(s * Pm * m * Pm.inv())


# --- vector fields ------------------------------------------------------------------


def test_bracket_matches_vector_field_commutator():
    pairs = [("Z: t^2; X: t", "Y: exp(-t); W: t; X: 1"), ("Z: 1", "Z: t"), ("X: t", "X: 1"), ("Y: t^2", "Y: t")]
    for a, b in pairs:
        A, B = P(a), P(b)
        assert fields_equal(commutator(vector_field(A), vector_field(B)), vector_field(bracket(A, B)))
