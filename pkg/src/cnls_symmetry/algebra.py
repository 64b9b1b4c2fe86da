"""The infinite-dimensional symmetry algebra spanned by X_f, Y_g, Z_h, W_k.

Elements are quadruples of labeling functions.  The bracket is bilinear in
the labels and is computed in one closed formula covering every generator pair.

Flow convention: ``translate(d)`` maps every label ``l(t)`` to ``l(t + d)``.
In terms of the adjoint series (with ``ad(Z)Y = [Y, Z]``) this is
``exp(-d * ad(Z_1))``; with it, ``translate(-a/2)`` sends ``Z_{2t+a}`` to
``Z_{2t}``.  ``scale(s)`` is ``exp(ln(s) * ad(Z_t))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import sympy as sp

from .exprfield import coeff as C
from .exprfield import (
    ONE,
    ZERO,
    FuncExpr,
    NotElementary,
    ParseError,
    antidifferentiate,
    as_funcexpr,
    differentiate,
    parse_expr,
    render,
    substitute_funcs,
    substitute_params,
    substitute_scale,
    substitute_shift,
)

SLOTS = ("X", "Y", "Z", "W")
P = C.sym("p")
Q = C.sym("q")
EXP_AD_BOUND = 8


class NonNilpotent(ArithmeticError):
    """The adjoint series did not terminate within the iteration bound."""


@dataclass(frozen=True)
class LieElement:
    """``X_f + Y_g + Z_h + W_k``."""

    f: FuncExpr = ZERO
    g: FuncExpr = ZERO
    h: FuncExpr = ZERO
    k: FuncExpr = ZERO

    @property
    def labels(self) -> tuple[FuncExpr, FuncExpr, FuncExpr, FuncExpr]:
        return (self.f, self.g, self.h, self.k)

    def slot(self, name: str) -> FuncExpr:
        return self.labels[SLOTS.index(name)]

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.labels)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement(*(a + b for a, b in zip(self.labels, other.labels)))

    def __neg__(self) -> "LieElement":
        return LieElement(*(-a for a in self.labels))

    def __sub__(self, other: "LieElement") -> "LieElement":
        return LieElement(*(a - b for a, b in zip(self.labels, other.labels)))

    def scale(self, c) -> "LieElement":
        return LieElement(*(a.scale(c) for a in self.labels))

    def __rmul__(self, c) -> "LieElement":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return all(a == b for a, b in zip(self.labels, other.labels))

    def __hash__(self) -> int:
        return hash(self.labels)

    def map_labels(self, fn) -> "LieElement":
        return LieElement(*(fn(a) for a in self.labels))

    def subs_funcs(self, mapping: Mapping[str, FuncExpr]) -> "LieElement":
        return self.map_labels(lambda a: substitute_funcs(a, mapping))

    def subs_params(self, bindings: Mapping[str, object]) -> "LieElement":
        return self.map_labels(lambda a: substitute_params(a, bindings))

    def __str__(self) -> str:
        return render_element(self)

    def __repr__(self) -> str:
        return f"LieElement({render_element(self)!r})"


def X(f) -> LieElement:
    return LieElement(f=as_funcexpr(f))


def Y(g) -> LieElement:
    return LieElement(g=as_funcexpr(g))


def Z(h) -> LieElement:
    return LieElement(h=as_funcexpr(h))


def W(k) -> LieElement:
    return LieElement(k=as_funcexpr(k))


GENERATORS = {"X": X, "Y": Y, "Z": Z, "W": W}
ZERO_ELEMENT = LieElement()


def element(**slots) -> LieElement:
    """Build from keyword slots, e.g. ``element(X="t", W="1")``."""
    out = ZERO_ELEMENT
    for name, val in slots.items():
        out = out + GENERATORS[name](val)
    return out


def parse_element(text: str) -> LieElement:
    """Parse slot-tagged text such as ``"X: t; Z: 1"`` (``"0"`` is zero).

    Repeated slots add up.  Errors carry positions relative to ``text``.
    """
    stripped = text.strip()
    if stripped == "0":
        return ZERO_ELEMENT
    if not stripped:
        raise ParseError("empty element", 0, text)
    out = ZERO_ELEMENT
    offset = 0
    for part in text.split(";"):
        body = part.strip()
        start = offset + (len(part) - len(part.lstrip()))
        offset += len(part) + 1
        if not body:
            continue
        if ":" not in body:
            raise ParseError("expected a slot tag such as 'X:'", start, text)
        tag, expr = body.split(":", 1)
        tag = tag.strip()
        if tag not in GENERATORS:
            raise ParseError(f"unknown slot tag {tag!r}", start, text)
        expr_start = start + body.index(":") + 1
        try:
            label = parse_expr(expr)
        except ParseError as exc:
            pos = exc.position + expr_start if exc.position >= 0 else expr_start
            raise type(exc)(str(exc).split(" at position")[0], pos, text) from exc
        out = out + GENERATORS[tag](label)
    return out


def render_element(V: LieElement) -> str:
    parts = [f"{s}: {render(lbl)}" for s, lbl in zip(SLOTS, V.labels) if not lbl.is_zero()]
    return "; ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# bracket


def bracket(V: LieElement, v: LieElement, p=P, q=Q) -> LieElement:
    """Lie bracket ``[V, v]`` from the commutator table, extended bilinearly.

    ``p`` and ``q`` default to the symbols; numeric values bind them.
    """
    F, G, H, K = V.labels
    f, g, h, k = v.labels
    dF, dG, dH, dK = (differentiate(a) for a in (F, G, H, K))
    df, dg, dh, dk = (differentiate(a) for a in (f, g, h, k))
    half = C.HALF
    zs = H * dh - dH * h
    xs = H * df - (dH * f).scale(half) + (F * dh).scale(half) - dF * h
    ys = H * dg - (dH * g).scale(half) + (G * dh).scale(half) - dG * h
    ws = H * dk - h * dK
    if F or f:
        ws = ws - (F * df - dF * f).scale(C.div(C.ONE, 2 * C.to_coeff(p)))
    if G or g:
        ws = ws + (G * dg - dG * g).scale(C.div(C.ONE, 2 * C.to_coeff(q)))
    return LieElement(xs, ys, zs, ws)


def jacobi_defect(V1: LieElement, V2: LieElement, V3: LieElement, p=P, q=Q) -> LieElement:
    def b(a, c):
        return bracket(a, c, p, q)

    return b(b(V1, V2), V3) + b(b(V2, V3), V1) + b(b(V3, V1), V2)


def ad(Zg: LieElement, V: LieElement) -> LieElement:
    """Adjoint operator in the convention ``ad(Z)V = [V, Z]``."""
    return bracket(V, Zg)


def exp_ad(Zg: LieElement, delta, V: LieElement, bound: int = EXP_AD_BOUND) -> LieElement:
    """``sum_k delta^k / k! ad(Z)^k V``; raises NonNilpotent past ``bound``."""
    delta = C.to_coeff(delta)
    out = V
    term = V
    fact = C.ONE
    for kth in range(1, bound + 1):
        term = ad(Zg, term)
        if term.is_zero():
            return out
        fact = C.mul(fact, C.div(delta, sp.Integer(kth)))
        out = out + term.scale(fact)
    if ad(Zg, term).is_zero():
        return out
    raise NonNilpotent(f"ad({Zg}) is not nilpotent on {V} within {bound} steps")


# ---------------------------------------------------------------------------
# flows and reflections


@dataclass(frozen=True)
class FlowSpec:
    kind: str  # "translate" or "scale"
    param: sp.Expr = field(default=C.ZERO)

    def __post_init__(self):
        if self.kind not in ("translate", "scale"):
            raise ValueError(f"unknown flow kind {self.kind!r}")
        object.__setattr__(self, "param", C.to_coeff(self.param))
        if self.kind == "scale" and C.is_zero(self.param):
            raise ValueError("scale factor must be nonzero")

    @staticmethod
    def translate(delta) -> "FlowSpec":
        return FlowSpec("translate", delta)

    @staticmethod
    def scale(s) -> "FlowSpec":
        return FlowSpec("scale", s)


def flow(spec: FlowSpec, V: LieElement) -> LieElement:
    """Apply a translation or scaling of t to every label."""
    if spec.kind == "translate":
        return V.map_labels(lambda a: substitute_shift(a, spec.param))
    s = spec.param
    inv = C.div(C.ONE, s)
    root = C.power(s, C.HALF)
    f, g, h, k = (substitute_scale(a, inv) for a in V.labels)
    return LieElement(f.scale(root), g.scale(root), h.scale(s), k)


_REFLECTIONS = {
    "x": (-1, 1),
    "y": (1, -1),
    "xy": (-1, -1),
    "u": (1, 1),
}


def reflect(axis: str, V: LieElement) -> LieElement:
    """Conjugation of a generator by one of the discrete reflections."""
    if axis not in _REFLECTIONS:
        raise ValueError(f"unknown reflection axis {axis!r}")
    sf, sg = _REFLECTIONS[axis]
    return LieElement(V.f.scale(sf), V.g.scale(sg), V.h, V.k)


# ---------------------------------------------------------------------------
# normalization


@dataclass(frozen=True)
class AdjointStep:
    generator: LieElement
    delta: sp.Expr

    def apply(self, V: LieElement) -> LieElement:
        return exp_ad(self.generator, self.delta, V)

    def __str__(self) -> str:
        return f"exp_ad({render_element(self.generator)}, {self.delta})"


def normalize_to_Z1(V: LieElement) -> tuple[LieElement, list[AdjointStep]]:
    """Conjugate an element with ``h = 1`` to ``Z_1``.

    Removes the Y, X and W labels in that order, each with one adjoint step
    whose label is a primitive of the current label.
    """
    if V.h != ONE:
        raise ValueError("normalize_to_Z1 requires the Z label to be exactly 1")
    trace: list[AdjointStep] = []
    cur = V
    for slot in ("Y", "X", "W"):
        lbl = cur.slot(slot)
        if lbl.is_zero():
            continue
        gen = GENERATORS[slot](-antidifferentiate(lbl))
        step = AdjointStep(gen, C.ONE)
        cur = step.apply(cur)
        trace.append(step)
    if cur != Z(ONE):
        raise NotElementary(f"normalization ended at {cur}")
    return cur, trace


def replay(V: LieElement, trace: Sequence[AdjointStep]) -> LieElement:
    for step in trace:
        V = step.apply(V)
    return V


def render_vector_field(V: LieElement) -> str:
    from .vectorfield import render_field, vector_field

    return render_field(vector_field(V))


def abstract(slot: str, name: str) -> LieElement:
    """Generator with an uninterpreted label, e.g. ``abstract("X", "F")``."""
    return GENERATORS[slot](FuncExpr.ufunc(name))


def combination(pairs: Iterable[tuple[object, LieElement]]) -> LieElement:
    out = ZERO_ELEMENT
    for c, V in pairs:
        out = out + V.scale(c)
    return out
