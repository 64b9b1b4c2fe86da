import pytest

from cnls_symmetry.algebra import parse_element
from cnls_symmetry.catalog import (
    build_sample,
    check_constraints,
    distinguish,
    get_entry,
    list_entries,
    parse_catalog,
    requirement_satisfiable,
    samples_for,
    serialize_catalog,
    verify_entry,
)
from cnls_symmetry.suites import EPS_SIGN_ENTRIES

P = parse_element


def report(ident, k=0):
    e = get_entry(ident)
    return verify_entry(e, samples_for(e)[k])


def test_entry_counts():
    entries = list_entries()
    assert sum(e.dim == 1 for e in entries) == 4
    assert sum(e.dim == 2 for e in entries) == 12
    assert sum(e.dim == 3 for e in entries) >= 33


def test_entry_generators():
    assert get_entry("L_{2,12}").generators == [P("W: exp(-t)"), P("Z: 1")]


def test_catalog_text_round_trip():
    entries = list_entries(include_variants=True)
    assert parse_catalog(serialize_catalog(entries)) == entries


def test_unknown_entry():
    with pytest.raises(KeyError):
        get_entry("L_{9,9}")


def test_constraint_holds():
    e = get_entry("L_{2,6}")
    assert check_constraints(e, build_sample(e, {"phi": "t", "psi": "1", "Phi": "-eps*t"})).ok


def test_constraint_sign_flip_residual():
    e = get_entry("L_{2,6}")
    res = check_constraints(e, build_sample(e, {"phi": "t", "psi": "1", "Phi": "eps*t"}))
    # eps is q/p, so the residual 2*eps renders in p and q
    assert not res.ok and res.residuals == ["2*q/p"]


def test_every_entry_has_three_samples():
    for e in list_entries():
        assert len(samples_for(e)) >= 3, e.id


def test_sl2_entry():
    r = report("L_s")
    assert (r.dimension, r.verdict, r.claim_match) == (3, "sl2", "match")


def test_nonabelian_pair():
    r = report("L_{2,9}")
    assert r.verdict == "nonabelian2d" and r.claim_match == "match"


def test_nilpotent_m_entry():
    r = report("L_{3,5}")
    assert r.verdict == "solvable" and r.m_class == "M3_nilpotent" and r.claim_match == "match"


def test_distinguish_separates():
    assert distinguish([("a", report("L_{2,1}")), ("b", report("L_{2,9}"))]).separated == [("a", "b")]
    assert distinguish([("a", report("L_{3,4}")), ("b", report("L_{3,5}"))]).separated == [("a", "b")]


def test_distinguish_limitation():
    e = get_entry("L_{2,4}")
    items = [(psi, verify_entry(e, build_sample(e, {"psi": psi}))) for psi in ("t", "t^2")]
    assert distinguish(items).unseparated == [("t", "t^2")]


@pytest.mark.parametrize("ident", EPS_SIGN_ENTRIES)
def test_requirement_needs_positive_eps(ident):
    e = get_entry(ident)
    assert not requirement_satisfiable(e, -1).satisfiable
    assert requirement_satisfiable(e, 1).satisfiable
