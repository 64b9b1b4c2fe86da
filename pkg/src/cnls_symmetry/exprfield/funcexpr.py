"""Canonical univariate function expressions.

A :class:`FuncExpr` is a sorted tuple of :class:`Term` objects, each of the
shape ``c * t^a * e^(l t) * ln(t)^k * trig(w t) * prod f_i^(j_i)(t)``.  Trig
products are reduced with product-to-sum identities so each term carries at
most one cos/sin atom, which makes identities like cos^2 + sin^2 = 1 fall out
of canonicalisation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

import sympy as sp

from . import coeff as C
from .errors import DomainError, NotElementary, UnboundSymbol, UnsupportedClass
from .expform import EONE, EZERO, ExponentForm

NONE, COS, SIN = 0, 1, 2
_TRIG_NAMES = {COS: "cos", SIN: "sin"}

Ufuncs = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Term:
    coeff: sp.Expr
    tpow: ExponentForm = EZERO
    expfreq: ExponentForm = EZERO
    logpow: int = 0
    trig: int = NONE
    freq: ExponentForm = EZERO
    ufuncs: Ufuncs = ()

    @cached_property
    def signature(self):
        return (self.tpow, self.expfreq, self.logpow, self.trig, self.freq, self.ufuncs)

    def with_coeff(self, c) -> "Term":
        return Term(c, self.tpow, self.expfreq, self.logpow, self.trig, self.freq, self.ufuncs)

    def is_constant(self) -> bool:
        return (
            self.tpow.is_zero()
            and self.expfreq.is_zero()
            and self.logpow == 0
            and self.trig == NONE
            and not self.ufuncs
        )


def _merge_ufuncs(a: Ufuncs, b: Ufuncs) -> Ufuncs:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def _normalize_trig(t: Term) -> Term | None:
    """Fix the frequency sign and remove degenerate trig atoms."""
    if t.trig == NONE:
        return t
    s = t.freq.leading_sign()
    if s == 0:
        if t.trig == COS:
            return Term(t.coeff, t.tpow, t.expfreq, t.logpow, NONE, EZERO, t.ufuncs)
        return None
    if s < 0:
        c = C.mul(t.coeff, sp.Integer(-1)) if t.trig == SIN else t.coeff
        return Term(c, t.tpow, t.expfreq, t.logpow, t.trig, -t.freq, t.ufuncs)
    return t


def _term_product(a: Term, b: Term) -> list[Term]:
    c = C.mul(a.coeff, b.coeff)
    tp = a.tpow + b.tpow
    ef = a.expfreq + b.expfreq
    lp = a.logpow + b.logpow
    uf = _merge_ufuncs(a.ufuncs, b.ufuncs)
    if a.trig == NONE or b.trig == NONE:
        if a.trig == NONE:
            kind, fr = b.trig, b.freq
        else:
            kind, fr = a.trig, a.freq
        return [Term(c, tp, ef, lp, kind, fr, uf)]
    half = C.mul(c, C.HALF)
    neg_half = C.mul(half, sp.Integer(-1))
    s, d = a.freq + b.freq, a.freq - b.freq
    if a.trig == COS and b.trig == COS:
        parts = [(half, COS, d), (half, COS, s)]
    elif a.trig == SIN and b.trig == SIN:
        parts = [(half, COS, d), (neg_half, COS, s)]
    elif a.trig == SIN:  # sin a cos b
        parts = [(half, SIN, s), (half, SIN, d)]
    else:  # cos a sin b
        parts = [(half, SIN, s), (neg_half, SIN, d)]
    return [Term(cc, tp, ef, lp, k, f, uf) for cc, k, f in parts]


class FuncExpr:
    """Immutable canonical sum of terms."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Term] = (), _canonical: bool = False):
        if _canonical:
            self.terms = tuple(terms)
        else:
            self.terms = _canonicalize(terms)
        self._hash = None

    # construction helpers ---------------------------------------------------
    @staticmethod
    def const(c) -> "FuncExpr":
        c = C.to_coeff(c)
        if C.is_zero(c):
            return ZERO
        return FuncExpr([Term(c)], _canonical=True)

    @staticmethod
    def monomial(c=1, tpow=0, expfreq=0, logpow=0, trig=NONE, freq=0, ufuncs=()) -> "FuncExpr":
        return FuncExpr(
            [
                Term(
                    C.to_coeff(c),
                    ExponentForm.of(tpow),
                    ExponentForm.of(expfreq),
                    int(logpow),
                    trig,
                    ExponentForm.of(freq),
                    tuple(sorted(ufuncs)),
                )
            ]
        )

    @staticmethod
    def t_power(n) -> "FuncExpr":
        return FuncExpr.monomial(tpow=n)

    @staticmethod
    def ufunc(name: str, order: int = 0) -> "FuncExpr":
        return FuncExpr([Term(C.ONE, ufuncs=((name, order),))], _canonical=True)

    # ring operations ----------------------------------------------------------
    def __add__(self, other) -> "FuncExpr":
        other = as_funcexpr(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        return FuncExpr(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "FuncExpr":
        m1 = sp.Integer(-1)
        return FuncExpr((t.with_coeff(C.mul(t.coeff, m1)) for t in self.terms), _canonical=True)

    def __sub__(self, other) -> "FuncExpr":
        return self + (-as_funcexpr(other))

    def __rsub__(self, other) -> "FuncExpr":
        return as_funcexpr(other) - self

    def __mul__(self, other) -> "FuncExpr":
        if isinstance(other, FuncExpr):
            if not self.terms or not other.terms:
                return ZERO
            out: list[Term] = []
            for a in self.terms:
                for b in other.terms:
                    out.extend(_term_product(a, b))
            return FuncExpr(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "FuncExpr":
        c = C.to_coeff(c)
        if C.is_zero(c):
            return ZERO
        if c == 1:
            return self
        return FuncExpr((t.with_coeff(C.mul(t.coeff, c)) for t in self.terms))

    def __truediv__(self, c) -> "FuncExpr":
        if isinstance(c, FuncExpr):
            return self * invert(c)
        return self.scale(C.div(C.ONE, C.to_coeff(c)))

    def __pow__(self, n: int) -> "FuncExpr":
        if not isinstance(n, int) or n < 0:
            raise ValueError("FuncExpr powers take nonnegative integers")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    # comparison -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, FuncExpr):
            try:
                other = as_funcexpr(other)
            except TypeError:
                return NotImplemented
        if len(self.terms) != len(other.terms):
            return False
        for a, b in zip(self.terms, other.terms):
            if a.signature != b.signature or not C.equal(a.coeff, b.coeff):
                return False
        return True

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple((t.signature, t.coeff) for t in self.terms))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        from .parser import render

        return f"FuncExpr({render(self)!r})"

    def __str__(self) -> str:
        from .parser import render

        return render(self)

    # queries --------------------------------------------------------------
    def is_constant(self) -> bool:
        return all(t.is_constant() for t in self.terms)

    def constant_value(self) -> sp.Expr:
        if not self.terms:
            return C.ZERO
        if len(self.terms) == 1 and self.terms[0].is_constant():
            return self.terms[0].coeff
        raise ValueError(f"{self} is not constant")

    def ufunc_names(self) -> set[str]:
        return {n for t in self.terms for n, _ in t.ufuncs}

    def param_names(self) -> set[str]:
        out: set[str] = set()
        for t in self.terms:
            out |= C.free_names(t.coeff)
            out |= t.tpow.names() | t.expfreq.names() | t.freq.names()
        return out

    def diff(self) -> "FuncExpr":
        return differentiate(self)


def as_funcexpr(x) -> FuncExpr:
    if isinstance(x, FuncExpr):
        return x
    if isinstance(x, str):
        from .parser import parse_expr

        return parse_expr(x)
    if isinstance(x, (int, Fraction, sp.Basic)):
        return FuncExpr.const(x)
    raise TypeError(f"cannot convert {type(x).__name__} to FuncExpr")


def _canonicalize(terms: Iterable[Term]) -> tuple[Term, ...]:
    acc: dict[tuple, list] = {}
    proto: dict[tuple, Term] = {}
    for t in terms:
        t = _normalize_trig(t)
        if t is None:
            continue
        sig = t.signature
        bucket = acc.get(sig)
        if bucket is not None:
            bucket.append(t.coeff)
        else:
            acc[sig] = [t.coeff]
            proto[sig] = t
    out = []
    for sig in sorted(acc):
        c = C.total(acc[sig])
        if not C.is_zero(c):
            out.append(proto[sig].with_coeff(c))
    return tuple(out)


ZERO = FuncExpr((), _canonical=True)
ONE = FuncExpr([Term(C.ONE)], _canonical=True)
T = FuncExpr([Term(C.ONE, tpow=EONE)], _canonical=True)


def invert(e: FuncExpr) -> FuncExpr:
    """Multiplicative inverse of a single trig-free, log-free, ufunc-free term."""
    if len(e.terms) != 1:
        raise ZeroDivisionError(f"cannot divide by the sum {e}")
    t = e.terms[0]
    if t.trig != NONE or t.logpow or t.ufuncs:
        raise ZeroDivisionError(f"cannot divide by {e}")
    return FuncExpr(
        [Term(C.div(C.ONE, t.coeff), -t.tpow, -t.expfreq)], _canonical=True
    )


# ---------------------------------------------------------------------------
# public arithmetic entry point


def arith(op: str, *args) -> FuncExpr:
    """Dispatch ``add``, ``neg``, ``mul`` or ``scalar_mul``."""
    if op == "add":
        out = ZERO
        for a in args:
            out = out + as_funcexpr(a)
        return out
    if op == "neg":
        (a,) = args
        return -as_funcexpr(a)
    if op == "mul":
        out = ONE
        for a in args:
            out = out * as_funcexpr(a)
        return out
    if op == "scalar_mul":
        c, a = args
        return as_funcexpr(a).scale(c)
    raise ValueError(f"unknown operation {op!r}")


def is_zero(e: FuncExpr) -> bool:
    return as_funcexpr(e).is_zero()


def equals(a, b) -> bool:
    return as_funcexpr(a) == as_funcexpr(b)


# ---------------------------------------------------------------------------
# calculus


def _diff_term(t: Term) -> list[Term]:
    out: list[Term] = []
    if not t.tpow.is_zero():
        out.append(
            Term(C.mul(t.coeff, t.tpow.to_sympy()), t.tpow - EONE, t.expfreq,
                 t.logpow, t.trig, t.freq, t.ufuncs)
        )
    if not t.expfreq.is_zero():
        out.append(t.with_coeff(C.mul(t.coeff, t.expfreq.to_sympy())))
    if t.logpow:
        out.append(
            Term(C.mul(t.coeff, sp.Integer(t.logpow)), t.tpow - EONE, t.expfreq,
                 t.logpow - 1, t.trig, t.freq, t.ufuncs)
        )
    if t.trig == COS:
        w = C.mul(t.freq.to_sympy(), sp.Integer(-1))
        out.append(Term(C.mul(t.coeff, w), t.tpow, t.expfreq, t.logpow, SIN, t.freq, t.ufuncs))
    elif t.trig == SIN:
        out.append(
            Term(C.mul(t.coeff, t.freq.to_sympy()), t.tpow, t.expfreq, t.logpow,
                 COS, t.freq, t.ufuncs)
        )
    for i, (name, order) in enumerate(t.ufuncs):
        uf = t.ufuncs[:i] + ((name, order + 1),) + t.ufuncs[i + 1:]
        out.append(Term(t.coeff, t.tpow, t.expfreq, t.logpow, t.trig, t.freq, tuple(sorted(uf))))
    return out


@lru_cache(maxsize=1 << 14)
def differentiate(e: FuncExpr) -> FuncExpr:
    out: list[Term] = []
    for t in e.terms:
        out.extend(_diff_term(t))
    return FuncExpr(out)


def nth_derivative(e: FuncExpr, n: int) -> FuncExpr:
    for _ in range(n):
        e = differentiate(e)
    return e


def _one(t: Term) -> FuncExpr:
    return FuncExpr([t])


def _integrate_powlog(c, alpha: ExponentForm, k: int) -> FuncExpr:
    """Primitive of c t^alpha ln(t)^k."""
    if alpha == -EONE:
        return FuncExpr([Term(C.div(c, sp.Integer(k + 1)), EZERO, EZERO, k + 1)])
    s = alpha + EONE
    ss = s.to_sympy()
    head = FuncExpr([Term(C.div(c, ss), s, EZERO, k)])
    if k == 0:
        return head
    return head - _integrate_powlog(C.div(C.mul(c, sp.Integer(k)), ss), alpha, k - 1)


def _integrate_exptrig(c, lam: ExponentForm, kind: int, w: ExponentForm) -> FuncExpr:
    """Primitive of c e^(lam t) trig(w t), trig none/cos/sin."""
    ls = lam.to_sympy()
    if kind == NONE:
        return FuncExpr([Term(C.div(c, ls), EZERO, lam)])
    ws = w.to_sympy()
    d = C.add(C.mul(ls, ls), C.mul(ws, ws))
    if C.is_zero(d):
        raise NotElementary("degenerate exponential-trigonometric frequency")
    k = C.div(c, d)
    if kind == COS:
        parts = [(C.mul(k, ls), COS), (C.mul(k, ws), SIN)]
    else:
        parts = [(C.mul(k, ls), SIN), (C.mul(C.mul(k, ws), sp.Integer(-1)), COS)]
    return FuncExpr([Term(cc, EZERO, lam, 0, kk, w) for cc, kk in parts])


def _integrate_term(t: Term) -> FuncExpr:
    if t.ufuncs:
        if (
            len(t.ufuncs) == 1
            and t.ufuncs[0][1] >= 1
            and t.tpow.is_zero()
            and t.expfreq.is_zero()
            and t.logpow == 0
            and t.trig == NONE
        ):
            name, order = t.ufuncs[0]
            return FuncExpr([Term(t.coeff, ufuncs=((name, order - 1),))])
        raise NotElementary(f"no primitive in the class for {_one(t)}")
    if t.expfreq.is_zero() and t.trig == NONE:
        return _integrate_powlog(t.coeff, t.tpow, t.logpow)
    if t.logpow or not t.tpow.is_nonneg_integer():
        raise NotElementary(f"no primitive in the class for {_one(t)}")
    n = t.tpow.as_int()
    q = _integrate_exptrig(t.coeff, t.expfreq, t.trig, t.freq)
    if n == 0:
        return q
    # parts: int t^n E = t^n Q - n int t^(n-1) Q
    tn = FuncExpr.t_power(n)
    rest = FuncExpr.t_power(n - 1) * q
    return tn * q - antidifferentiate(rest).scale(n)


@lru_cache(maxsize=1 << 12)
def antidifferentiate(e: FuncExpr) -> FuncExpr:
    """Primitive with zero integration constant, or raise NotElementary."""
    out = ZERO
    for t in e.terms:
        out = out + _integrate_term(t)
    return out


# ---------------------------------------------------------------------------
# substitutions


def _expform_times(e: ExponentForm, c) -> ExponentForm:
    try:
        return ExponentForm.from_sympy(C.mul(e.to_sympy(), c))
    except ValueError as exc:
        raise UnsupportedClass(f"frequency {e} times {c} is not rational-linear") from exc


def substitute_scale(e: FuncExpr, c) -> FuncExpr:
    """Compose with ``t -> c t``."""
    c = C.to_coeff(c)
    if C.is_zero(c):
        raise ZeroDivisionError("scale factor must be invertible")
    out: list[Term] = []
    for t in e.terms:
        if t.ufuncs:
            raise UnsupportedClass(f"cannot rescale the argument of {_one(t)}")
        k = t.coeff
        if not t.tpow.is_zero():
            k = C.mul(k, C.power(c, t.tpow.to_sympy()))
        ef = _expform_times(t.expfreq, c) if not t.expfreq.is_zero() else EZERO
        fr = _expform_times(t.freq, c) if t.trig != NONE else EZERO
        if t.logpow:
            lc = sp.log(c)
            for i in range(t.logpow + 1):
                cc = C.mul(k, C.mul(sp.Integer(math.comb(t.logpow, i)), C.power(lc, sp.Integer(t.logpow - i))))
                out.append(Term(cc, t.tpow, ef, i, t.trig, fr))
        else:
            out.append(Term(k, t.tpow, ef, 0, t.trig, fr))
    return FuncExpr(out)


def substitute_shift(e: FuncExpr, a) -> FuncExpr:
    """Compose with ``t -> t + a``."""
    a = C.to_coeff(a)
    if C.is_zero(a):
        return e
    out: list[Term] = []
    for t in e.terms:
        if t.ufuncs:
            raise UnsupportedClass(f"cannot shift the argument of {_one(t)}")
        if t.logpow:
            raise UnsupportedClass(f"shift of a logarithm leaves the class: {_one(t)}")
        if not t.tpow.is_nonneg_integer():
            raise UnsupportedClass(f"shift of a non-polynomial power: {_one(t)}")
        k = t.coeff
        if not t.expfreq.is_zero():
            k = C.mul(k, sp.exp(C.mul(t.expfreq.to_sympy(), a)))
        if t.trig == NONE:
            trig_parts = [(C.ONE, NONE)]
        else:
            wa = C.mul(t.freq.to_sympy(), a)
            cw, sw = sp.cos(wa), sp.sin(wa)
            if t.trig == COS:
                trig_parts = [(cw, COS), (C.mul(sw, sp.Integer(-1)), SIN)]
            else:
                trig_parts = [(cw, SIN), (sw, COS)]
        n = t.tpow.as_int()
        for i in range(n + 1):
            b = C.mul(sp.Integer(math.comb(n, i)), C.power(a, sp.Integer(n - i)))
            for tc, kind in trig_parts:
                out.append(
                    Term(C.mul(C.mul(k, b), tc), ExponentForm(Fraction(i)), t.expfreq, 0,
                         kind, t.freq if kind != NONE else EZERO)
                )
    return FuncExpr(out)


def substitute_params(e: FuncExpr, bindings: Mapping[str, object]) -> FuncExpr:
    """Replace parameter symbols by coefficient values."""
    if not bindings:
        return e
    subs = {C.sym(n): C.to_coeff(v) for n, v in bindings.items()}
    names = set(bindings)
    out: list[Term] = []

    def ef(x: ExponentForm) -> ExponentForm:
        if not (x.names() & names):
            return x
        try:
            return ExponentForm.from_sympy(x.to_sympy().subs(subs))
        except ValueError as exc:
            raise UnsupportedClass(f"exponent {x} leaves rational-linear form") from exc

    for t in e.terms:
        c = t.coeff
        if C.free_names(c) & names:
            c = C.canon(c.subs(subs))
        out.append(Term(c, ef(t.tpow), ef(t.expfreq), t.logpow, t.trig, ef(t.freq), t.ufuncs))
    return FuncExpr(out)


def substitute_funcs(e: FuncExpr, mapping: Mapping[str, FuncExpr]) -> FuncExpr:
    """Replace uninterpreted functions by concrete expressions."""
    if not mapping:
        return e
    cache: dict[tuple[str, int], FuncExpr] = {}

    def deriv(name: str, order: int) -> FuncExpr:
        key = (name, order)
        if key not in cache:
            cache[key] = nth_derivative(as_funcexpr(mapping[name]), order)
        return cache[key]

    out = ZERO
    for t in e.terms:
        keep = tuple(u for u in t.ufuncs if u[0] not in mapping)
        piece = FuncExpr([Term(t.coeff, t.tpow, t.expfreq, t.logpow, t.trig, t.freq, keep)])
        for name, order in t.ufuncs:
            if name in mapping:
                piece = piece * deriv(name, order)
                if piece.is_zero():
                    break
        out = out + piece
    return out


# ---------------------------------------------------------------------------
# interop


T_SYM = sp.Symbol("t")


def term_to_sympy(t: Term, tsym=T_SYM) -> sp.Expr:
    out = t.coeff
    if not t.tpow.is_zero():
        out = out * tsym ** t.tpow.to_sympy()
    if not t.expfreq.is_zero():
        out = out * sp.exp(t.expfreq.to_sympy() * tsym)
    if t.logpow:
        out = out * sp.log(tsym) ** t.logpow
    if t.trig == COS:
        out = out * sp.cos(t.freq.to_sympy() * tsym)
    elif t.trig == SIN:
        out = out * sp.sin(t.freq.to_sympy() * tsym)
    for name, order in t.ufuncs:
        f = sp.Function(name)(tsym)
        out = out * (f.diff(tsym, order) if order else f)
    return out


def to_sympy(e: FuncExpr, tsym=T_SYM) -> sp.Expr:
    return sp.Add(*[term_to_sympy(t, tsym) for t in e.terms])


def eval_numeric(
    e: FuncExpr,
    t0: float,
    params: Mapping[str, float] | None = None,
    ufunc_bindings: Mapping[tuple[str, int], float] | None = None,
) -> complex | float:
    """Floating evaluation; returns a float when the value is real."""
    params = dict(params or {})
    ufunc_bindings = ufunc_bindings or {}
    total = 0j
    for t in e.terms:
        val = C.numeric(t.coeff, params)
        if not t.tpow.is_zero():
            a = t.tpow.numeric(params)
            if t0 > 0:
                val *= t0**a
            elif t.tpow.is_integer() and (t0 != 0 or a > 0):
                val *= float(t0) ** t.tpow.as_int()
            else:
                raise DomainError(f"t^{t.tpow} undefined at t={t0}")
        if not t.expfreq.is_zero():
            val *= math.exp(t.expfreq.numeric(params) * t0)
        if t.logpow:
            if t0 <= 0:
                raise DomainError(f"ln(t) undefined at t={t0}")
            val *= math.log(t0) ** t.logpow
        if t.trig == COS:
            val *= math.cos(t.freq.numeric(params) * t0)
        elif t.trig == SIN:
            val *= math.sin(t.freq.numeric(params) * t0)
        for u in t.ufuncs:
            if u not in ufunc_bindings:
                raise UnboundSymbol(f"no value bound for {u[0]}{chr(39) * u[1]}(t)")
            val *= ufunc_bindings[u]
        total += val
    if abs(total.imag) <= 1e-12 * max(1.0, abs(total.real)):
        return total.real
    return total


def eval_complex(e: FuncExpr, t0: float, params=None, ufunc_bindings=None) -> complex:
    return complex(eval_numeric(e, t0, params, ufunc_bindings))


__all__ = [
    "COS", "NONE", "SIN", "Term", "FuncExpr", "ZERO", "ONE", "T", "arith", "is_zero",
    "equals", "differentiate", "nth_derivative", "antidifferentiate", "substitute_scale",
    "substitute_shift", "substitute_params", "substitute_funcs", "to_sympy",
    "eval_numeric", "eval_complex", "as_funcexpr", "invert",
]
