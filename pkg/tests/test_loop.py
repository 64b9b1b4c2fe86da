import sympy as sp

from cnls_symmetry.algebra import parse_element
from cnls_symmetry.exprfield import coeff as C
from cnls_symmetry.loop import (
    LoopElement,
    check_L8,
    check_L11,
    check_witt,
    check_witt_symbolic,
    derivation,
    embed,
    embedding_orientation,
    grading_ok,
    laurent_basis,
    loop_bracket,
    rep_basis,
    table2_cell,
    verify_embedding,
    verify_table2,
)

n, m = sp.symbols("n m")


def test_laurent_basis():
    assert laurent_basis("W", 3) == parse_element("W: t^3")
    assert laurent_basis("Z", 0) == parse_element("Z: 1")
    assert laurent_basis("X", 2) == parse_element("X: t^2")


def test_table2_symbolic_cells():
    c, kind = table2_cell("Z", "Z", "n", "m")
    assert kind == "Z" and sp.simplify(c - (m - n)) == 0
    c, kind = table2_cell("X", "X", "n", "m")
    assert kind == "W" and sp.simplify(c + (m - n) / (2 * C.sym("p"))) == 0
    assert table2_cell("X", "Y", "n", "m") == (0, None)


def test_table2_all_cells():
    assert verify_table2().passed


def test_table2_diagonal_z():
    c, _ = table2_cell("Z", "Z", 1, 1)
    assert c == 0


def test_embeddings():
    B = rep_basis("x")
    assert embed("W", 0) == LoopElement.make({0: B["U"]})
    assert embed("Z", 1) == LoopElement.make({0: B["Delta"]}) + derivation({1: 1})
    assert embed("X", 1) == LoopElement.make({1: B["X"], 0: B["U_x"]})


def test_embedding_homomorphism():
    rep = verify_embedding()
    assert rep.passed
    assert embedding_orientation() == 1


def test_zero_cells_embed_to_zero():
    for k in range(-2, 3):
        for j in range(-2, 3):
            assert loop_bracket(embed("W", k), embed("W", j)).is_zero()


def test_witt():
    assert all(ok for _, _, ok in check_witt())
    assert check_witt_symbolic()


def test_grading():
    assert grading_ok()


def test_l8():
    r = check_L8()
    assert r.solvable and r.ideal and r.nilpotent
    assert r.derived[-1] == 0


def test_l11():
    r = check_L11()
    assert r.solvable and r.nilradical_ideal and r.nilradical_nilpotent
    assert r.abelian_ideal and r.abelian_pairs_zero == 28
    assert r.delta_x_proportional and r.vector_field_agreement
