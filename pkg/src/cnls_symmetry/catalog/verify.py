"""Sampling-based verification of catalog claims and invariant distinguishers."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Optional

import sympy as sp

from ..algebra import bracket, render_element
from ..exprfield import is_zero, render
from ..exprfield import coeff as C
from ..exprfield.parser import render_coeff
from ..structure import (
    JacobiViolation,
    LinearlyDependent,
    MClass,
    NotClosed,
    UndecidableSign,
    analyze,
    classify_M,
    killing_form,
    listed_basis_m,
    rank,
    structure_constants,
)
from .model import CatalogEntry, list_entries
from .samples import SampleAssignment, samples_for

M_TAGS = ("M1_zero", "M2_rank1_diag", "M3_nilpotent", "M4_diag", "M5_complex", "M6_jordan")


@dataclass
class ConstraintResult:
    ok: bool
    residuals: list = field(default_factory=list)  # rendered nonzero residuals


def check_constraints(entry: CatalogEntry, sample: SampleAssignment) -> ConstraintResult:
    residuals = []
    for c in entry.expanded_constraints():
        r = sample.apply(c)
        if not is_zero(r):
            residuals.append(render(r))
    for req in entry.requires:
        r = sample.apply_coeff(req)
        if not C.is_zero(r):
            residuals.append(render_coeff(r))
    return ConstraintResult(not residuals, residuals)


# ---------------------------------------------------------------------------
# satisfiability of parameter requirements


@dataclass
class Satisfiability:
    entry: str
    satisfiable: bool
    reason: str


def requirement_satisfiable(entry: CatalogEntry, eps_value) -> Satisfiability:
    """Decide whether the parameter requirements have a real solution.

    ``eps`` is bound to ``eps_value``; every other parameter ranges over the
    reals.  Inequation notes are not part of the decision.
    """
    if not entry.requires:
        return Satisfiability(entry.id, True, "no parameter equation to violate")
    eps_value = sp.sympify(eps_value)
    exprs = []
    for req in entry.requires:
        e = sp.sympify(req).subs(C.sym("eps"), eps_value)
        real = {s: sp.Symbol(s.name, real=True) for s in e.free_symbols}
        exprs.append(sp.expand(e.xreplace(real)))
    for e in exprs:
        if e.is_positive or e.is_negative:
            return Satisfiability(entry.id, False, f"{e} = 0 has no real solution")
        syms = sorted(e.free_symbols, key=lambda s: s.name)
        if len(syms) == 1 and sp.solveset(e, syms[0], sp.S.Reals) == sp.S.EmptySet:
            return Satisfiability(entry.id, False, f"{e} = 0 has no real solution")
        if not syms and e != 0:
            return Satisfiability(entry.id, False, f"{e} != 0")
    return Satisfiability(entry.id, True, "real solutions exist")


# ---------------------------------------------------------------------------
# per-entry verification


@dataclass
class VerificationReport:
    entry: str
    sample: str
    dimension: Optional[int] = None
    independent: Optional[bool] = None
    closed: Optional[bool] = None
    verdict: str = "unclassified"
    m_class: Optional[str] = None
    m_listed_basis: Optional[str] = None
    claimed_m_class: Optional[str] = None
    claim_match: str = "not-comparable"  # match | mismatch | not-comparable
    constraints_ok: Optional[bool] = None
    side_conditions: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    invariants: Optional[tuple] = None

    @property
    def passed(self) -> bool:
        """Dimension, independence and closure hold (M mismatches are reported separately)."""
        return bool(self.independent and self.closed and self.constraints_ok is not False)

    def tree(self) -> dict:
        return {
            "entry": self.entry,
            "sample": self.sample,
            "dimension": self.dimension,
            "independent": self.independent,
            "closed": self.closed,
            "constraints_ok": self.constraints_ok,
            "verdict": self.verdict,
            "m_class": self.m_class,
            "m_listed_basis": self.m_listed_basis,
            "claimed_m_class": self.claimed_m_class,
            "claim_match": self.claim_match,
            "side_conditions": list(self.side_conditions),
            "notes": list(self.notes),
        }

    def lines(self) -> list[str]:
        out = []
        for k, v in self.tree().items():
            if isinstance(v, list):
                out.extend(f"{k}: {x}" for x in v)
            elif v is not None:
                out.append(f"{k}: {v}")
        return out


def _fmt(m) -> str:
    m = sp.Matrix(m)
    return "[" + ", ".join(
        "[" + ", ".join(render_coeff(C.canon(x)) for x in m.row(i)) + "]" for i in range(m.rows)
    ) + "]"


def invariant_vector(rep, sc) -> tuple:
    """(dimension, derived dims, lower central dims, center dim, class, Killing rank)."""
    if rep.verdict == "sl2":
        cls = "sl2"
    elif rep.m_class is not None:
        cls = str(rep.m_class)
    else:
        cls = rep.verdict
    kr = killing_form(sc).rank(iszerofunc=lambda e: C.is_zero(C.canon(e)))
    return (rep.dimension, tuple(rep.derived), tuple(rep.lower_central), rep.center_dim, cls, kr)


def _claimed_class(entry: CatalogEntry, sample: SampleAssignment) -> Optional[MClass]:
    if entry.m is None:
        return None
    m = entry.m.applyfunc(sample.apply_coeff)
    return classify_M(m)


def verify_entry(entry: CatalogEntry, sample: SampleAssignment) -> VerificationReport:
    rep = VerificationReport(entry.id, sample.label or sample.describe())
    rep.notes.append(f"sample: {sample.describe()}")
    cres = check_constraints(entry, sample)
    rep.constraints_ok = cres.ok
    for r in cres.residuals:
        rep.notes.append(f"constraint residual: {r}")
    gens = [V.subs_funcs(sample.funcs).subs_params(sample.param_bindings()) for V in entry.expanded_generators()]
    binds = sample.param_bindings()

    def br(a, b):
        return bracket(a, b).subs_params(binds)

    rk = rank(gens)
    rep.dimension = rk.rank
    rep.independent = rk.rank == entry.dim == len(gens)
    rep.side_conditions += list(rk.side_conditions)
    if not rep.independent:
        rep.notes.append(f"rank {rk.rank} for {len(gens)} generators; dependency {rk.dependency}")
        return rep
    try:
        sc = structure_constants(gens, bracket_fn=br)
    except NotClosed as exc:
        rep.closed = False
        i, j = exc.pair
        rep.notes.append(f"bracket of generators {i + 1} and {j + 1} leaves the span: {render_element(exc.residual)}")
        return rep
    except JacobiViolation as exc:
        rep.closed = False
        rep.notes.append(str(exc))
        return rep
    rep.closed = True
    rep.side_conditions += [s for s in sc.side_conditions if s not in rep.side_conditions]
    try:
        arep = analyze(sc)
    except UndecidableSign as exc:
        rep.notes.append(str(exc))
        return rep
    rep.verdict = arep.verdict
    rep.side_conditions += [s for s in arep.side_conditions if s not in rep.side_conditions]
    rep.notes += arep.notes
    rep.invariants = invariant_vector(arep, sc)
    if arep.m_class is not None:
        rep.m_class = str(arep.m_class)
    if sc.n == 3:
        mlist = listed_basis_m(sc)
        if mlist is not None:
            rep.m_listed_basis = _fmt(mlist)
    _compare_claim(entry, sample, sc, arep, rep)
    return rep


def _compare_claim(entry, sample, sc, arep, rep) -> None:
    claim = entry.claim
    if claim == "sl2":
        rep.claim_match = "match" if arep.verdict == "sl2" else "mismatch"
        if "adapted_basis" in arep.witnesses:
            rep.notes.append("adapted basis found")
        return
    if claim == "abelian":
        rep.claim_match = "match" if arep.verdict == "abelian" else "mismatch"
        return
    if claim == "nonabelian2d":
        if arep.verdict != "nonabelian2d":
            rep.claim_match = "mismatch"
            return
        x, y = sc.pair(0, 1)
        normal = C.equal(x, C.ONE) and C.is_zero(y)
        rep.notes.append("listed basis satisfies [A1, A2] = A1" if normal else "listed basis needs rescaling")
        rep.claim_match = "match"
        return
    # solvable with a claimed M
    if arep.verdict != "solvable":
        rep.claim_match = "mismatch"
        rep.notes.append(f"claimed solvable, computed {arep.verdict}")
        return
    try:
        claimed = _claimed_class(entry, sample)
    except UndecidableSign as exc:
        rep.notes.append(f"claimed M not classifiable: {exc}")
        return
    if claimed is None or arep.m_class is None:
        return
    rep.claimed_m_class = str(claimed)
    rep.claim_match = "match" if claimed == arep.m_class else "mismatch"
    if rep.claim_match == "mismatch":
        rep.notes.append(f"computed {arep.m_class} but listed M gives {claimed}")


# ---------------------------------------------------------------------------
# sweep


@dataclass
class SweepReport:
    reports: list = field(default_factory=list)

    def by_entry(self) -> dict[str, list[VerificationReport]]:
        out: dict[str, list] = {}
        for r in self.reports:
            out.setdefault(r.entry, []).append(r)
        return out

    def failures(self) -> list[VerificationReport]:
        return [r for r in self.reports if not r.passed]

    def mismatches(self) -> list[VerificationReport]:
        return [r for r in self.reports if r.claim_match == "mismatch"]

    def tree(self) -> list[dict]:
        return [r.tree() for r in self.reports]

    def json(self) -> str:
        return json.dumps(self.tree(), indent=2, sort_keys=True)


def sweep(entries=None, samples: Optional[int] = None, include_variants: bool = False) -> SweepReport:
    if entries is None:
        entries = list_entries(include_variants=include_variants)
    out = SweepReport()
    for e in sorted(entries, key=lambda x: _order_key(x.id)):
        for s in samples_for(e, samples):
            out.reports.append(verify_entry(e, s))
    return out


def _order_key(ident: str):
    import re

    nums = [int(x) for x in re.findall(r"\d+", ident)]
    return (ident.startswith("L0"), nums, ident)


# ---------------------------------------------------------------------------
# distinguishers


@dataclass
class DistinguishReport:
    invariants: dict  # label -> invariant tuple
    separated: list = field(default_factory=list)  # (label, label)
    unseparated: list = field(default_factory=list)


def distinguish(items) -> DistinguishReport:
    """``items`` is a list of (label, VerificationReport) with invariants filled."""
    inv = {lbl: rep.invariants for lbl, rep in items}
    out = DistinguishReport(inv)
    for (a, ra), (b, rb) in itertools.combinations(items, 2):
        if ra.invariants != rb.invariants:
            out.separated.append((a, b))
        else:
            out.unseparated.append((a, b))
    return out
