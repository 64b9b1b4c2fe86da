"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; in the
latter case the lines are repeated in the terminal summary.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path
from time import perf_counter

import sympy as sp

sys.path.insert(0, str(Path(__file__).parent))

from cnls_symmetry import suites  # noqa: E402
from cnls_symmetry.catalog import list_entries, sweep  # noqa: E402
from cnls_symmetry.catalog.pde import (  # noqa: E402
    FAMILIES,
    constant_orbit_solution,
    fd_residual,
    richardson_suite,
)
from cnls_symmetry.exprfield import coeff as C  # noqa: E402
from cnls_symmetry.structure import classify_M  # noqa: E402

from gen import random_invertible, random_m, random_rational  # noqa: E402
from oracles import agrees, brute_force_class, classifier_as_numeric  # noqa: E402
from properties import check_case  # noqa: E402

RESULTS: list[str] = []


def _run(title: str, fn, budget: float | None = None) -> tuple[bool, str]:
    t0 = perf_counter()
    ok, detail = fn()
    dt = perf_counter() - t0
    if budget is not None and dt >= budget:
        ok = False
        detail += f"; over the {budget:g} s budget"
    line = f"{'PASS' if ok else 'FAIL'}  {title}: {detail} ({dt:.2f} s)"
    RESULTS.append(line)
    print(line)
    return ok, line


def _suite(*names: str):
    def fn():
        reps = [suites.run_suite(n) for n in names]
        good = sum(r.counts[0] for r in reps)
        total = sum(r.counts[1] for r in reps)
        bad = [f"{r.name}/{c.label} [{c.detail}]" for r in reps for c in r.checks if not c.ok]
        return not bad and total > 0, f"{good}/{total} checks" + (f"; failing: {bad}" if bad else "")
    return fn


# ---------------------------------------------------------------------------


def test_commutator_table_cells():
    ok, line = _run("commutator table, 16 abstract cells", _suite("table1"), budget=1.0)
    assert ok, line


def test_jacobi_identity():
    ok, line = _run("jacobi identity, 20 abstract and 100 random triples", _suite("jacobi"), budget=5.0)
    assert ok, line


def test_levi_ideal_has_no_z_component():
    ok, line = _run("levi decomposition, zero Z-component", _suite("levi"))
    assert ok, line


def test_adjoint_closed_forms():
    ok, line = _run("adjoint series closed forms with second-order terms", _suite("table3"))
    assert ok, line


def test_laurent_bracket_table():
    ok, line = _run("laurent bracket table, symbolic n and m", _suite("table2"))
    assert ok, line


def test_sl2_triple():
    ok, line = _run("sl2 triple and adapted basis", _suite("sl2"))
    assert ok, line


def test_eight_and_eleven_dimensional_algebras():
    ok, line = _run("eight- and eleven-dimensional algebras", _suite("l8", "l11"), budget=5.0)
    assert ok, line


def test_loop_embedding_and_witt():
    ok, line = _run("loop embedding for n, m in [-3, 3] and witt relations", _suite("loop"))
    assert ok, line


def _catalog_sweep():
    entries = list_entries()
    by_dim = {d: sum(e.dim == d for e in entries) for d in (1, 2, 3)}
    sw = sweep(entries)
    problems = []
    if by_dim[1] != 4 or by_dim[2] != 12 or by_dim[3] < 33:
        problems.append(f"entry counts {by_dim}")
    six = {"M1_zero", "M2_rank1_diag", "M3_nilpotent", "M4_diag", "M5_complex", "M6_jordan"}
    for ident, reps in sw.by_entry().items():
        if len(reps) < 3:
            problems.append(f"{ident}: only {len(reps)} samples")
        for r in reps:
            if not r.passed:
                problems.append(f"{ident}/{r.sample}: dimension, independence or closure failed")
            if r.dimension == 3:
                if r.verdict not in ("abelian", "solvable", "sl2"):
                    problems.append(f"{ident}/{r.sample}: verdict {r.verdict}")
                if r.verdict == "solvable" and (r.m_class or "").split("(")[0] not in six:
                    problems.append(f"{ident}/{r.sample}: M class {r.m_class}")
    mism = sorted({r.entry for r in sw.mismatches()})
    detail = (f"{len(sw.by_entry())} entries, {len(sw.reports)} samples; "
              f"listed M mismatches: {', '.join(mism) or 'none'}")
    if problems:
        detail += f"; problems: {problems}"
    return not problems, detail


def test_catalog_sweep():
    ok, line = _run("catalog sweep", _catalog_sweep, budget=60.0)
    assert ok, line


def test_eps_sign_requirements():
    ok, line = _run("parameter requirement unsatisfiable at eps = -1", _suite("eps_sign"))
    assert ok, line


def _m_oracle():
    rng = random.Random(0)
    bad = []
    for _ in range(200):
        m = random_m(rng)
        oracle = brute_force_class(m, rng)
        exact = classifier_as_numeric(classify_M(m))
        if not agrees(oracle, exact):
            bad.append(f"{m.tolist()}: oracle {oracle}, classifier {exact}")
    inv_bad = 0
    for _ in range(500):
        m = random_m(rng)
        P = random_invertible(rng)
        s = random_rational(rng, 1, 5) * rng.choice([1, -1])
        if classify_M(m) != classify_M(s * P * m * P.inv()):
            inv_bad += 1
    ok = not bad and inv_bad == 0
    detail = f"oracle agreement {200 - len(bad)}/200, invariance {500 - inv_bad}/500"
    if bad:
        detail += f"; first disagreement {bad[0]}"
    return ok, detail


def test_m_classifier_oracle():
    ok, line = _run("M classifier against brute-force oracle", _m_oracle)
    assert ok, line


def _pde():
    res = richardson_suite(seed=0)
    fams = {r.family for r in res}
    ratios = [r.ratio for r in res]
    worst_r2 = max(r.r2_max for r in res)
    zero = max(
        max(fd_residual(constant_orbit_solution(1.0, *f, eps_g=0.0, p=1.0, q=2.0, r=1.0), pt, h))
        for f in FAMILIES for pt in {r.point for r in res} for h in (1e-2, 5e-3)
    )
    ok = len(fams) >= 5 and all(r.passed for r in res) and worst_r2 < 1e-6 and zero < 1e-12
    detail = (f"{len(fams)} families x 3 points, R1 ratio in [{min(ratios):.3f}, {max(ratios):.3f}], "
              f"R2 at most {worst_r2:.1e}, eps_g = 0 residual {zero:.1e}")
    return ok, detail


def test_pde_orbit_oracle():
    ok, line = _run("PDE orbit oracle, Richardson ratio", _pde, budget=10.0)
    assert ok, line


def _random_rational_function(rng: random.Random) -> sp.Expr:
    syms = [C.sym(n) for n in ("p", "q", "eps")]

    def poly():
        return sum(sp.Rational(rng.randint(-3, 3), rng.randint(1, 3)) * sp.Mul(*rng.sample(syms, rng.randint(0, 2)))
                   for _ in range(rng.randint(1, 3)))

    den = poly()
    while den == 0:
        den = poly()
    return poly() / den + poly()


def _exprfield_properties():
    rng = random.Random(0)
    failures = []
    for _ in range(1000):
        failures += check_case(rng)
    canon_bad = 0
    for _ in range(200):
        e = _random_rational_function(rng)
        c = C.canon(e)
        forms = (sp.cancel(e), sp.together(e), sp.expand(e), c)
        if any(C.canon(f) != c for f in forms) or sp.cancel(c - sp.cancel(e)) != 0:
            canon_bad += 1
    ok = not failures and canon_bad == 0
    detail = f"1000 cases, {len(failures)} law failures; coefficient canon stable across rewritings {200 - canon_bad}/200"
    if failures:
        detail += f"; first: {failures[0]}"
    return ok, detail


def test_exprfield_properties():
    ok, line = _run("expression field ring laws, round trip and idempotence", _exprfield_properties, budget=30.0)
    assert ok, line


if __name__ == "__main__":
    tests = [v for k, v in list(globals().items()) if k.startswith("test_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    print(f"{len(tests) - failed}/{len(tests)} criteria pass")
    sys.exit(1 if failed else 0)
