"""Built-in verification suites shared by the CLI and the test-suite.

Each suite returns a :class:`SuiteReport`: a list of named checks plus extra
report lines.  Reports carry no timings so that identical runs produce
identical text.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

import sympy as sp

from .algebra import (
    FlowSpec,
    LieElement,
    abstract,
    bracket,
    exp_ad,
    flow,
    jacobi_defect,
    parse_element,
    render_element,
)
from .exprfield import FuncExpr, parse_expr
from .exprfield import coeff as C

# ---------------------------------------------------------------------------
# report types


@dataclass
class Check:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    checks: list = field(default_factory=list)
    extra: list = field(default_factory=list)  # informational lines (mismatches and so on)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def counts(self) -> tuple[int, int]:
        return sum(c.ok for c in self.checks), len(self.checks)

    def add(self, label: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(label, bool(ok), detail))

    def summary(self) -> str:
        good, total = self.counts
        return f"{self.name}: {good}/{total} checks pass" + ("" if self.passed else " (FAILED)")

    def lines(self) -> list[str]:
        out = [self.summary()]
        for c in self.checks:
            tail = f"  [{c.detail}]" if c.detail and not c.ok else ""
            out.append(f"  {'ok  ' if c.ok else 'FAIL'} {c.label}{tail}")
        out += [f"  note: {x}" for x in self.extra]
        return out

    def tree(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "counts": list(self.counts),
            "checks": [{"label": c.label, "ok": c.ok, "detail": c.detail} for c in self.checks],
            "notes": list(self.extra),
        }


# ---------------------------------------------------------------------------
# commutator table

_UPPER = {"Z": "H", "X": "F", "Y": "G", "W": "K"}
_LOWER = {"Z": "h", "X": "f", "Y": "g", "W": "k"}

# frozen table entries [V_upper, v_lower] written in the element grammar
TABLE1 = {
    ("Z", "Z"): "Z: H(t)*h'(t) - H'(t)*h(t)",
    ("Z", "X"): "X: H(t)*f'(t) - 1/2*H'(t)*f(t)",
    ("Z", "Y"): "Y: H(t)*g'(t) - 1/2*H'(t)*g(t)",
    ("Z", "W"): "W: H(t)*k'(t)",
    ("X", "Z"): "X: 1/2*F(t)*h'(t) - F'(t)*h(t)",
    ("X", "X"): "W: -1/(2*p)*(F(t)*f'(t) - F'(t)*f(t))",
    ("X", "Y"): "0",
    ("X", "W"): "0",
    ("Y", "Z"): "Y: 1/2*G(t)*h'(t) - G'(t)*h(t)",
    ("Y", "X"): "0",
    ("Y", "Y"): "W: 1/(2*q)*(G(t)*g'(t) - G'(t)*g(t))",
    ("Y", "W"): "0",
    ("W", "Z"): "W: -h(t)*K'(t)",
    ("W", "X"): "0",
    ("W", "Y"): "0",
    ("W", "W"): "0",
}


def suite_table1() -> SuiteReport:
    rep = SuiteReport("table1")
    for (r, c), want_txt in TABLE1.items():
        got = bracket(abstract(r, _UPPER[r]), abstract(c, _LOWER[c]))
        want = parse_element(want_txt)
        rep.add(f"[{r}_{_UPPER[r]}, {c}_{_LOWER[c]}]", got == want, f"got {got}; table {want}")
    return rep


# ---------------------------------------------------------------------------
# Jacobi identity


def random_polynomial(rng: random.Random, degree: int | None = None) -> FuncExpr:
    """Random rational polynomial in t; the degree is drawn from 1..3 unless given."""
    if degree is None:
        degree = rng.randint(1, 3)
    terms = [f"({rng.randint(-3, 3)}/{rng.randint(1, 3)})*t^{d}" for d in range(degree + 1)]
    return parse_expr(" + ".join(terms))


def _nonzero_rational(rng: random.Random) -> sp.Rational:
    return sp.Rational(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))


def random_element(rng: random.Random) -> LieElement:
    return LieElement(*(random_polynomial(rng) for _ in range(4)))


def suite_jacobi(seed: int = 0, random_cases: int = 100) -> SuiteReport:
    rep = SuiteReport("jacobi")
    names = {"X": "fgh", "Y": "abc", "Z": "rsu", "W": "klm"}
    for combo in itertools.combinations_with_replacement("XYZW", 3):
        els = [abstract(s, f"{names[s][i]}") for i, s in enumerate(combo)]
        d = jacobi_defect(*els)
        rep.add("abstract " + "".join(combo), d.is_zero(), f"defect {d}")
    # random triples bind p and q to nonzero rationals; the abstract ones keep them symbolic
    rng = random.Random(seed)
    bad = 0
    for i in range(random_cases):
        els = [random_element(rng) for _ in range(3)]
        p, q = (_nonzero_rational(rng) for _ in range(2))
        d = jacobi_defect(*els, p=p, q=q)
        if not d.is_zero():
            bad += 1
            rep.add(f"random triple {i}", False, f"defect {d}")
    rep.add(f"{random_cases} random polynomial triples", bad == 0, f"{bad} nonzero defects")
    return rep


# ---------------------------------------------------------------------------
# Levi decomposition


def suite_levi() -> SuiteReport:
    rep = SuiteReport("levi")
    n = abstract("X", "F") + abstract("Y", "G") + abstract("W", "K")
    v = abstract("X", "f") + abstract("Y", "g") + abstract("Z", "h") + abstract("W", "k")
    for label, b in (("[N, V]", bracket(n, v)), ("[V, N]", bracket(v, n))):
        rep.add(f"{label} has no Z part", b.h.is_zero(), f"Z label {b.h}")
    s = bracket(abstract("Z", "H"), abstract("Z", "h"))
    rep.add("[Z_H, Z_h] stays in the Z slot", s.f.is_zero() and s.g.is_zero() and s.k.is_zero())
    nn = bracket(n, abstract("X", "f") + abstract("Y", "g") + abstract("W", "k"))
    rep.add("[N, N] lies in W", nn.f.is_zero() and nn.g.is_zero() and nn.h.is_zero())
    return rep


# ---------------------------------------------------------------------------
# adjoint actions

_FHAT = "(1/(4*p))*(1/2*F(t)*h'(t) - F'(t)*h(t))"
_FHAT_D = "(1/(4*p))*(1/2*F(t)*h''(t) - 1/2*F'(t)*h'(t) - F''(t)*h(t))"
_GHAT = "(1/(4*q))*(1/2*G(t)*h'(t) - G'(t)*h(t))"
_GHAT_D = "(1/(4*q))*(1/2*G(t)*h''(t) - 1/2*G'(t)*h'(t) - G''(t)*h(t))"

# frozen closed forms exp(delta*ad(row)) col
TABLE3 = {
    ("X", "Z"): f"Z: h(t); X: -4*p*delta*{_FHAT}; W: -delta^2*(F(t)*{_FHAT_D} - F'(t)*{_FHAT})",
    ("X", "X"): "X: f(t); W: delta*(1/(2*p))*(F(t)*f'(t) - F'(t)*f(t))",
    ("X", "Y"): "Y: g(t)",
    ("X", "W"): "W: k(t)",
    ("Y", "Z"): f"Z: h(t); Y: -4*q*delta*{_GHAT}; W: delta^2*(G(t)*{_GHAT_D} - G'(t)*{_GHAT})",
    ("Y", "X"): "X: f(t)",
    ("Y", "Y"): "Y: g(t); W: -delta*(1/(2*q))*(G(t)*g'(t) - G'(t)*g(t))",
    ("Y", "W"): "W: k(t)",
    ("W", "Z"): "Z: h(t); W: delta*h(t)*K'(t)",
    ("W", "X"): "X: f(t)",
    ("W", "Y"): "Y: g(t)",
    ("W", "W"): "W: k(t)",
}


def suite_table3() -> SuiteReport:
    rep = SuiteReport("table3")
    delta = C.sym("delta")
    for (r, c), want_txt in TABLE3.items():
        got = exp_ad(abstract(r, _UPPER[r]), delta, abstract(c, _LOWER[c]))
        want = parse_element(want_txt)
        rep.add(f"exp(delta ad {r}_{_UPPER[r]}) {c}_{_LOWER[c]}", got == want, f"got {got}; table {want}")
    # Z_H row on concrete instances: translations (H = 1) and scalings (H = t)
    d = C.sym("d")
    for txt in ("Z: t^2; X: t; W: 1", "X: t^3; Y: t^2 - 1", "Z: t^3; W: t^2"):
        V = parse_element(txt)
        ok = flow(FlowSpec.translate(d), V) == exp_ad(parse_element("Z: 1"), C.sub(C.ZERO, d), V)
        rep.add(f"translation flow on {txt}", ok)
    s = C.sym("s")
    for slot, n in itertools.product("XYZW", range(4)):
        V = parse_element(f"{slot}: t^{n}")
        want = V.scale(C.power(s, _SCALE_WEIGHT[slot](n)))
        rep.add(f"scaling flow on {slot}_t^{n}", flow(FlowSpec.scale(s), V) == want)
    return rep


# ad(Z_t) acts on the monomial label t^n of each slot by these weights
_SCALE_WEIGHT = {
    "X": lambda n: sp.Rational(1, 2) - n,
    "Y": lambda n: sp.Rational(1, 2) - n,
    "Z": lambda n: sp.Integer(1 - n),
    "W": lambda n: sp.Integer(-n),
}


# ---------------------------------------------------------------------------
# sl(2) triple


def suite_sl2() -> SuiteReport:
    from .structure import analyze, structure_constants

    rep = SuiteReport("sl2")
    basis = [parse_element(x) for x in ("Z: 1", "Z: t", "Z: t^2")]
    frozen = {
        (0, 1): "Z: 1",
        (0, 2): "Z: 2*t",
        (1, 2): "Z: t^2",
    }
    for (i, j), txt in frozen.items():
        got = bracket(basis[i], basis[j])
        rep.add(f"[{basis[i]}, {basis[j]}] = {txt}", got == parse_element(txt), f"got {got}")
    a = analyze(structure_constants(basis))
    rep.add("classified as sl2", a.verdict == "sl2", f"verdict {a.verdict}")
    rep.add("adapted basis found", "adapted_basis" in a.witnesses)
    return rep


# ---------------------------------------------------------------------------
# commutators of the Laurent basis, loop embedding, finite subalgebras


def suite_table2() -> SuiteReport:
    from .loop import verify_table2

    rep = SuiteReport("table2")
    for c in verify_table2().cells:
        rep.add(f"[{c.pair[0]}_t^n, {c.pair[1]}_t^m]", c.passed, c.detail)
    return rep


def suite_loop() -> SuiteReport:
    from .loop import verify_embedding

    rep = SuiteReport("loop")
    emb = verify_embedding()
    rep.extra.append(f"orientation {emb.orientation:+d} fixed by the (Z, W) cell")
    for k1, k2 in itertools.product("ZXYW", repeat=2):
        cells = [c for c in emb.cells if c.pair[:2] == (k1, k2)]
        bad = [c for c in cells if not c.passed]
        rep.add(f"embedding {k1}-{k2}, n, m in [-3, 3]", not bad,
                "; ".join(f"n={c.pair[2]} m={c.pair[3]} {c.detail}" for c in bad[:5]))
    rep.add("Witt relations n, m in [-3, 3]", all(ok for *_, ok in emb.witt))
    rep.add("Witt relations symbolic", emb.witt_symbolic)
    return rep


def suite_l8() -> SuiteReport:
    from .loop import check_L8

    r = check_L8()
    rep = SuiteReport("l8")
    rep.add("solvable", r.solvable, f"derived {r.derived}")
    rep.add("7-dim span is an ideal", r.ideal)
    rep.add("7-dim ideal is nilpotent", r.nilpotent, f"lower central {r.lower_central}")
    rep.extra.append(f"derived series dims {r.derived}")
    return rep


def suite_l11() -> SuiteReport:
    from .loop import check_L11

    r = check_L11()
    rep = SuiteReport("l11")
    rep.add("all matrix commutators close", not r.closure_problems, str(r.closure_problems))
    rep.add("solvable", r.solvable, f"derived {r.derived}")
    rep.add("10-dim nilradical is an ideal", r.nilradical_ideal)
    rep.add("10-dim nilradical is nilpotent", r.nilradical_nilpotent)
    rep.add("8-dim span is an ideal", r.abelian_ideal)
    rep.add("8-dim ideal is Abelian", r.abelian_pairs_zero == 28, f"{r.abelian_pairs_zero}/28 pairs commute")
    rep.add("grading is additive", r.grading_additive)
    rep.add("[Delta, X] is proportional to X", r.delta_x_proportional)
    rep.add("matrix constants agree with vector fields", bool(r.vector_field_agreement),
            str(r.vector_field_mismatches))
    rep.extra.append(f"derived series dims {r.derived}")
    return rep


# ---------------------------------------------------------------------------
# catalog sweeps


def _suite_dim(name: str, dim: int, samples: int | None) -> SuiteReport:
    from .catalog import list_entries, sweep

    rep = SuiteReport(name)
    entries = [e for e in list_entries() if e.dim == dim]
    sw = sweep(entries, samples)
    allowed = {"abelian", "solvable", "sl2"}
    for ident, reps in sw.by_entry().items():
        bad = [r for r in reps if not r.passed]
        detail = "; ".join(n for r in bad for n in r.notes if not n.startswith("sample:"))
        rep.add(f"{ident} ({len(reps)} samples)", not bad, detail)
        if dim == 3:
            verdicts = {r.verdict for r in reps}
            rep.add(f"{ident} verdict in the allowed set", verdicts <= allowed, str(sorted(verdicts)))
    for r in sw.mismatches():
        rep.extra.append(f"mismatch {r.entry} sample {r.sample}: computed {r.m_class}, listed {r.claimed_m_class}")
    return rep


def suite_thm4(samples: int | None = None) -> SuiteReport:
    return _suite_dim("thm4", 1, samples)


def suite_thm5(samples: int | None = None) -> SuiteReport:
    return _suite_dim("thm5", 2, samples)


def suite_thm6(samples: int | None = None) -> SuiteReport:
    return _suite_dim("thm6", 3, samples)


EPS_SIGN_ENTRIES = ("L_{3,13}", "L_{3,15}", "L_{3,19}", "L_{3,20}", "L_{3,21}", "L_{3,22}")


def suite_eps_sign() -> SuiteReport:
    from .catalog import get_entry, requirement_satisfiable

    rep = SuiteReport("eps_sign")
    for ident in EPS_SIGN_ENTRIES:
        s = requirement_satisfiable(get_entry(ident), -1)
        rep.add(f"{ident} unsatisfiable at eps = -1", not s.satisfiable, s.reason)
    return rep


# ---------------------------------------------------------------------------
# PDE orbit oracle


def suite_pde(seed: int = 0) -> SuiteReport:
    from .catalog.pde import FAMILIES, R2_NOISE, constant_orbit_solution, fd_residual, richardson_suite

    rep = SuiteReport("pde")
    for r in richardson_suite(seed=seed):
        pt = ", ".join(f"{x:.4f}" for x in r.point)
        rep.add(
            f"f={r.family[0]} g={r.family[1]} k={r.family[2]} at ({pt})",
            r.passed and r.r2_max < R2_NOISE,
            f"R1 ratio {r.ratio:.3f}, R2 {r.r2_max:.1e}",
        )
    worst = 0.0
    for fam in FAMILIES:
        sol = constant_orbit_solution(1.0, *fam, eps_g=0.0, p=1.0, q=2.0, r=1.0)
        worst = max(worst, *fd_residual(sol, (1.0, 0.3, -0.2), 1e-2))
    rep.add("eps_g = 0 residual below 1e-12", worst < 1e-12, f"max {worst:.1e}")
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "table1": suite_table1,
    "table3": suite_table3,
    "table2": suite_table2,
    "jacobi": suite_jacobi,
    "levi": suite_levi,
    "thm4": suite_thm4,
    "thm5": suite_thm5,
    "thm6": suite_thm6,
    "loop": suite_loop,
    "l8": suite_l8,
    "l11": suite_l11,
    "pde": suite_pde,
    "sl2": suite_sl2,
    "eps_sign": suite_eps_sign,
}


def run_suite(name: str, seed: int = 0, samples: int | None = None) -> SuiteReport:
    fn = SUITES[name]
    if name in ("jacobi", "pde"):
        return fn(seed=seed)
    if name in ("thm4", "thm5", "thm6"):
        return fn(samples=samples)
    return fn()


__all__ = ["Check", "SuiteReport", "SUITES", "run_suite", "render_element"]
