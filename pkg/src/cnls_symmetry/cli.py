"""Command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 span not closed,
4 internal precondition (non-nilpotent adjoint series, non-elementary
primitive, dependent basis).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__
from .algebra import (
    FlowSpec,
    NonNilpotent,
    bracket,
    exp_ad,
    flow,
    parse_element,
    render_element,
    render_vector_field,
)
from .exprfield import NotElementary, ParseError, parse_coeff, parse_expr, render
from .structure import LinearlyDependent, NotClosed, analyze, rank, structure_constants

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_NOT_CLOSED, EXIT_PRECONDITION = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _bindings(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise CliError(EXIT_PARSE, f"binding {item!r} must look like name=value")
        name, val = item.split("=", 1)
        c = parse_coeff(val)
        if not c.is_Rational:
            raise CliError(EXIT_PARSE, f"binding {item!r} must be an exact rational")
        out[name.strip()] = c
    return out


def _element(text: str, binds: dict):
    V = parse_element(text)
    return V.subs_params(binds) if binds else V


def _bound(V, binds: dict):
    return V.subs_params(binds) if binds else V


def _parse_error_lines(exc: ParseError) -> list[str]:
    out = [f"parse error: {exc}"]
    if exc.text and exc.position >= 0:
        out += [f"  {exc.text}", "  " + " " * exc.position + "^"]
    return out


def _emit(args, lines: list[str], tree) -> None:
    if args.format == "tree":
        text = json.dumps(tree, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_bracket(args) -> int:
    binds = _bindings(args.bind)
    V, v = _element(args.left, binds), _element(args.right, binds)
    r = _bound(bracket(V, v), binds)
    lines = [render_element(r), f"field: {render_vector_field(r)}"]
    _emit(args, lines, {"element": render_element(r), "field": render_vector_field(r)})
    return EXIT_OK


def cmd_adjoint(args) -> int:
    binds = _bindings(args.bind)
    gen, V = _element(args.generator, binds), _element(args.element, binds)
    delta = parse_coeff(args.delta)
    r = _bound(exp_ad(gen, delta, V), binds)
    _emit(args, [render_element(r)], {"element": render_element(r)})
    return EXIT_OK


def cmd_flow(args) -> int:
    binds = _bindings(args.bind)
    V = _element(args.element, binds)
    param = parse_coeff(args.param)
    spec = FlowSpec.translate(param) if args.kind == "translate" else FlowSpec.scale(param)
    r = _bound(flow(spec, V), binds)
    _emit(args, [render_element(r)], {"element": render_element(r)})
    return EXIT_OK


def cmd_render(args) -> int:
    binds = _bindings(args.bind)
    if ":" in args.expr:
        V = _element(args.expr, binds)
        lines = [render_element(V), f"field: {render_vector_field(V)}"]
        tree = {"element": render_element(V), "field": render_vector_field(V)}
    else:
        e = parse_expr(args.expr)
        if binds:
            from .exprfield import substitute_params

            e = substitute_params(e, binds)
        lines = [render(e)]
        tree = {"expression": render(e)}
    _emit(args, lines, tree)
    return EXIT_OK


def read_records(text: str) -> list[tuple[str, list[str]]]:
    """Blank-line separated records; returns (label, generator texts) pairs.

    Lines are ``key: value``; only ``id`` and ``gen`` matter here.  A record
    whose lines carry no key is read as one generator per line.
    """
    out = []
    for n, block in enumerate(re.split(r"\n\s*\n", text.strip()), start=1):
        label, gens = f"record {n}", []
        for raw in block.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition(":")
            key = key.strip()
            if key == "id":
                label = val.strip()
            elif key == "gen":
                gens.append(val.strip())
            elif key in ("X", "Y", "Z", "W"):
                gens.append(line)
        if gens:
            out.append((label, gens))
    return out


def cmd_analyze(args) -> int:
    binds = _bindings(args.bind)
    text = Path(args.path).read_text(encoding="utf-8")
    lines: list[str] = []
    tree: list[dict] = []
    code = EXIT_OK
    for label, gen_texts in read_records(text):
        gens = [_element(g, binds) for g in gen_texts]
        lines.append(f"entry: {label}")
        node = {"entry": label, "dimension": None, "closed": None, "verdict": None,
                "m_class": None, "claim_match": "not-comparable", "side_conditions": [], "notes": []}
        rk = rank(gens)
        if rk.rank != len(gens):
            raise CliError(EXIT_PRECONDITION, f"{label}: generators are linearly dependent ({rk.dependency})")
        node["dimension"] = rk.rank
        try:
            sc = structure_constants(gens)
        except NotClosed as exc:
            i, j = exc.pair
            res = render_element(exc.residual)
            lines += ["closed: False", f"residual: {res}",
                      f"note: bracket of generators {i + 1} and {j + 1} leaves the span"]
            node["closed"] = False
            node["notes"].append(f"residual {res}")
            tree.append(node)
            code = EXIT_NOT_CLOSED
            continue
        rep = analyze(sc)
        lines.append("closed: True")
        lines += rep.lines()
        node.update(closed=True, verdict=rep.verdict,
                    m_class=str(rep.m_class) if rep.m_class is not None else None,
                    side_conditions=list(map(str, rep.side_conditions)), notes=list(rep.notes))
        tree.append(node)
        lines.append("")
    _emit(args, lines, tree)
    return code


def cmd_verify(args) -> int:
    from .suites import SUITES, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(n, seed=args.seed, samples=args.samples) for n in names]
    lines = [ln for r in reports for ln in r.lines()]
    tree = [r.tree() for r in reports]
    tree_text = json.dumps(tree, indent=2, sort_keys=True, ensure_ascii=False)
    if args.out:
        text = tree_text if args.format == "tree" else "\n".join(lines)
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    if args.format == "tree":
        sys.stdout.write(tree_text + "\n")
    else:
        sys.stdout.write("\n".join(r.summary() for r in reports) + "\n")
        for r in reports:
            for c in r.checks:
                if not c.ok:
                    sys.stdout.write(f"FAIL {r.name}: {c.label} [{c.detail}]\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_catalog_list(args) -> int:
    from .catalog import list_entries
    from .catalog.model import serialize_entry

    entries = list_entries(include_variants=args.variants)
    if args.dim:
        entries = [e for e in entries if e.dim == args.dim]
    lines = [f"{e.id}  dim {e.dim}  {e.claim}  " + " | ".join(render_element(g) for g in e.generators)
             for e in entries]
    tree = [{"entry": e.id, "dimension": e.dim, "claim": e.claim, "status": e.status,
             "record": serialize_entry(e)} for e in entries]
    _emit(args, lines, tree)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "tree"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bind", action="append", metavar="NAME=VALUE", help="bind a parameter to a rational")
    common.add_argument("--out", metavar="PATH", help="also write the report to PATH")
    common.add_argument("--samples", type=int, default=None, metavar="N", help="cap samples per catalog entry")

    ap = argparse.ArgumentParser(prog="cnls-symmetry", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="bracket of two elements")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(fn=cmd_bracket)

    p = sub.add_parser("adjoint", parents=[common], help="exp(delta ad(generator)) element")
    p.add_argument("generator")
    p.add_argument("delta")
    p.add_argument("element")
    p.set_defaults(fn=cmd_adjoint)

    p = sub.add_parser("flow", parents=[common], help="translation or scaling of t")
    p.add_argument("kind", choices=("translate", "scale"))
    p.add_argument("param")
    p.add_argument("element")
    p.set_defaults(fn=cmd_flow)

    p = sub.add_parser("analyze", parents=[common], help="analyze the bases in a record file")
    p.add_argument("path")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("verify", parents=[common], help="run a built-in verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("render", parents=[common], help="canonical form of an expression or element")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("catalog-list", parents=[common], help="list catalog entries")
    p.add_argument("--dim", type=int, choices=(1, 2, 3))
    p.add_argument("--variants", action="store_true", help="include flagged reading variants")
    p.set_defaults(fn=cmd_catalog_list)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        sys.stderr.write("\n".join(_parse_error_lines(exc)) + "\n")
        return EXIT_PARSE
    except NotClosed as exc:
        sys.stderr.write(f"not closed: residual {render_element(exc.residual)}\n")
        return EXIT_NOT_CLOSED
    except (NonNilpotent, NotElementary, LinearlyDependent) as exc:
        sys.stderr.write(f"precondition failed: {exc}\n")
        return EXIT_PRECONDITION
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
