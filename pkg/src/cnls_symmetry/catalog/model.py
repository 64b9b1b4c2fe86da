"""Catalog records and their plain-text serialization."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

import sympy as sp

from ..algebra import LieElement, parse_element, render_element
from ..exprfield import FuncExpr, ParseError, parse_coeff, parse_expr, render, substitute_funcs
from ..exprfield import coeff as C
from ..exprfield.parser import render_coeff

CLAIMS = ("abelian", "nonabelian2d", "solvable", "sl2")
PHYSICAL = ("p", "q", "eps")


@dataclass
class CatalogEntry:
    id: str
    dim: int
    claim: str
    generators: list = field(default_factory=list)  # LieElement, lets not yet applied
    lets: list = field(default_factory=list)  # (name, FuncExpr)
    constraints: list = field(default_factory=list)  # FuncExpr that must vanish
    requires: list = field(default_factory=list)  # Coeff that must vanish
    signs: list = field(default_factory=list)  # text such as "eps > 0"
    m: Optional[sp.Matrix] = None
    family: str = ""
    status: str = ""
    notes: list = field(default_factory=list)

    @property
    def is_variant(self) -> bool:
        return self.status == "variant"

    def resolved_lets(self) -> dict[str, FuncExpr]:
        out: dict[str, FuncExpr] = {}
        for name, e in self.lets:
            out[name] = substitute_funcs(e, out) if out else e
        return out

    def expanded_generators(self) -> list[LieElement]:
        lets = self.resolved_lets()
        if not lets:
            return list(self.generators)
        return [V.subs_funcs(lets) for V in self.generators]

    def expanded_constraints(self) -> list[FuncExpr]:
        lets = self.resolved_lets()
        return [substitute_funcs(c, lets) if lets else c for c in self.constraints]

    def free_functions(self) -> list[str]:
        names: set[str] = set()
        for V in self.expanded_generators():
            for lbl in V.labels:
                names |= lbl.ufunc_names()
        for c in self.expanded_constraints():
            names |= c.ufunc_names()
        return sorted(names)

    def free_params(self) -> list[str]:
        names: set[str] = set()
        for V in self.expanded_generators():
            for lbl in V.labels:
                names |= lbl.param_names()
        for c in self.expanded_constraints():
            names |= c.param_names()
        for r in self.requires:
            names |= C.free_names(r)
        if self.m is not None:
            for x in self.m:
                names |= C.free_names(sp.sympify(x))
        return sorted(names - set(PHYSICAL))


def _parse_matrix(text: str) -> sp.Matrix:
    body = text.strip()
    if not (body.startswith("[[") and body.endswith("]]")):
        raise ParseError("matrix must look like [[a, b], [c, d]]", 0, text)
    rows = re.findall(r"\[([^\[\]]*)\]", body[1:-1])
    return sp.Matrix([[parse_coeff(x) for x in row.split(",")] for row in rows])


def _fmt_matrix(m: sp.Matrix) -> str:
    rows = ["[" + ", ".join(render_coeff(C.canon(x)) for x in m.row(i)) + "]" for i in range(m.rows)]
    return "[" + ", ".join(rows) + "]"


def parse_record(block: str) -> CatalogEntry:
    fields: dict[str, list[str]] = {}
    for raw in block.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError(f"expected 'key: value' in line {line!r}", 0, block)
        key, val = line.split(":", 1)
        fields.setdefault(key.strip(), []).append(val.strip())
    try:
        ident = fields["id"][0]
    except KeyError:
        raise ParseError("record without id", 0, block) from None
    entry = CatalogEntry(
        id=ident,
        dim=int(fields.get("dim", ["0"])[0]),
        claim=fields.get("claim", ["abelian"])[0],
        family=fields.get("family", [""])[0],
        status=fields.get("status", [""])[0],
        signs=fields.get("sign", []),
        notes=fields.get("note", []),
    )
    if entry.claim not in CLAIMS:
        raise ParseError(f"unknown claim {entry.claim!r} in {ident}", 0, block)
    for spec in fields.get("let", []):
        name, expr = spec.split("=", 1)
        entry.lets.append((name.strip(), parse_expr(expr)))
    entry.generators = [parse_element(g) for g in fields.get("gen", [])]
    entry.constraints = [parse_expr(c) for c in fields.get("constraint", [])]
    entry.requires = [parse_coeff(r) for r in fields.get("require", [])]
    if "m" in fields:
        entry.m = _parse_matrix(fields["m"][0])
    return entry


def parse_catalog(text: str) -> list[CatalogEntry]:
    blocks = re.split(r"\n\s*\n", text)
    out = []
    for b in blocks:
        if any(ln.strip() and not ln.strip().startswith("#") for ln in b.splitlines()):
            out.append(parse_record(b))
    return out


def serialize_entry(e: CatalogEntry) -> str:
    lines = [f"id: {e.id}", f"dim: {e.dim}", f"claim: {e.claim}"]
    if e.family:
        lines.append(f"family: {e.family}")
    if e.status:
        lines.append(f"status: {e.status}")
    if e.m is not None:
        lines.append(f"m: {_fmt_matrix(e.m)}")
    lines += [f"let: {n} = {render(x)}" for n, x in e.lets]
    lines += [f"gen: {render_element(g)}" for g in e.generators]
    lines += [f"constraint: {render(c)}" for c in e.constraints]
    lines += [f"require: {render_coeff(r)}" for r in e.requires]
    lines += [f"sign: {s}" for s in e.signs]
    lines += [f"note: {n}" for n in e.notes]
    return "\n".join(lines)


def serialize_catalog(entries) -> str:
    return "\n\n".join(serialize_entry(e) for e in entries) + "\n"


_CACHE: list[CatalogEntry] = []


def list_entries(include_variants: bool = False) -> list[CatalogEntry]:
    """Every catalog representative, in file order."""
    if not _CACHE:
        text = resources.files(__package__).joinpath("entries.txt").read_text(encoding="utf-8")
        _CACHE.extend(parse_catalog(text))
    return [e for e in _CACHE if include_variants or not e.is_variant]


def get_entry(ident: str) -> CatalogEntry:
    for e in list_entries(include_variants=True):
        if e.id == ident:
            return e
    raise KeyError(ident)
