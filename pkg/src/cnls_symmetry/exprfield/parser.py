"""Recursive-descent parser and renderer for the expression grammar.

Grammar::

    expr     := term (("+"|"-") term)*
    term     := factor (("*"|"/") factor)*
    factor   := base ("^" exponent)?
    base     := number | symbol | "t" | call | "(" expr ")" | "-" factor
    call     := ("exp"|"ln"|"cos"|"sin") "(" expr ")" | ident "'"* "(" "t" ")"
    exponent := signed number | symbol | "(" expr ")"

``render`` produces text in the same grammar, so ``parse_expr(render(e)) == e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp
from sympy.printing.precedence import precedence
from sympy.printing.str import StrPrinter

from . import coeff as C
from .errors import ParseError, UnsupportedConstruct
from .expform import EONE, EZERO, ExponentForm
from .funcexpr import COS, NONE, SIN, FuncExpr, Term, ONE, T, ZERO, invert

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()']))"
)
_CALLS = {"exp", "ln", "cos", "sin"}
_REJECTED = {"sqrt", "log", "tan", "abs"}
MAX_INT_POWER = 64


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", i, text)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        i = m.end()
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    # token helpers ----------------------------------------------------------
    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text or tok.kind == "end":
            found = tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", tok.pos, self.text)
        return self.take()

    def error(self, msg: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(msg, tok.pos, self.text)

    def unsupported(self, msg: str, tok: _Tok) -> UnsupportedConstruct:
        return UnsupportedConstruct(msg, tok.pos, self.text)

    # grammar ----------------------------------------------------------------
    def parse(self) -> FuncExpr:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        e = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected token {self.peek().text!r}")
        return e

    def expr(self) -> FuncExpr:
        out = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> FuncExpr:
        out = self.factor()
        while self.peek().text in ("*", "/") and self.peek().kind == "op":
            tok = self.take()
            rhs = self.factor()
            if tok.text == "*":
                out = out * rhs
            else:
                try:
                    out = out * invert(rhs)
                except ZeroDivisionError as exc:
                    raise self.unsupported(str(exc), tok) from exc
        return out

    def factor(self) -> FuncExpr:
        start = self.peek()
        b = self.base()
        if self.peek().text == "^" and self.peek().kind == "op":
            self.take()
            etok = self.peek()
            e = self.exponent()
            return self.apply_power(b, e, start, etok)
        return b

    def base(self) -> FuncExpr:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return FuncExpr.const(Fraction(tok.text))
        if tok.kind == "op" and tok.text == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return -self.factor()
        if tok.kind == "id":
            return self.identifier()
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {tok.text!r}")

    def identifier(self) -> FuncExpr:
        tok = self.take()
        name = tok.text
        nxt = self.peek()
        if name in _CALLS:
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return self.call(name, arg, tok)
        if nxt.text in ("(", "'") and nxt.kind == "op":
            if name in _REJECTED or name == "t":
                raise self.unsupported(f"function {name!r} is not part of the grammar", tok)
            order = 0
            while self.peek().text == "'":
                self.take()
                order += 1
            self.expect("(")
            arg = self.peek()
            if arg.text != "t" or self.peek(1).text != ")":
                raise self.unsupported(
                    f"uninterpreted function {name!r} must be applied to t", arg
                )
            self.take()
            self.expect(")")
            return FuncExpr.ufunc(name, order)
        if name == "t":
            return T
        if name in _REJECTED:
            raise self.unsupported(f"{name!r} is reserved", tok)
        return FuncExpr.const(C.sym(name))

    def exponent(self) -> sp.Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("-", "+"):
            self.take()
            num = self.peek()
            if num.kind != "num":
                raise self.error("expected a number after the sign in an exponent", num)
            self.take()
            v = C.to_coeff(Fraction(num.text))
            return -v if tok.text == "-" else v
        if tok.kind == "num":
            self.take()
            return C.to_coeff(Fraction(tok.text))
        if tok.kind == "id" and not (self.peek(1).text in ("(", "'")):
            if tok.text == "t":
                raise self.unsupported("exponents may not depend on t", tok)
            self.take()
            return C.sym(tok.text)
        if tok.kind == "op" and tok.text == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            if not e.is_constant():
                raise self.unsupported("exponents may not depend on t", tok)
            return e.constant_value()
        raise self.error("expected an exponent", tok)

    # semantics ----------------------------------------------------------------
    def apply_power(self, b: FuncExpr, e: sp.Expr, btok: _Tok, etok: _Tok) -> FuncExpr:
        if e.is_Integer and 0 <= e <= MAX_INT_POWER:
            return b ** int(e)
        if b.is_zero():
            raise self.unsupported("zero to a non-natural power", btok)
        if len(b.terms) != 1:
            raise self.unsupported("non-integer power of a sum", btok)
        t = b.terms[0]
        if t.trig != NONE or t.logpow or t.ufuncs:
            raise self.unsupported("non-integer power of a non-monomial", btok)
        try:
            tp = _scale_form(t.tpow, e)
            ef = _scale_form(t.expfreq, e)
        except ValueError as exc:
            raise self.unsupported("exponent is not rational-linear", etok) from exc
        return FuncExpr([Term(C.power(t.coeff, e), tp, ef)])

    def call(self, name: str, arg: FuncExpr, tok: _Tok) -> FuncExpr:
        if name == "ln":
            return self._ln(arg, tok)
        c0, lam = self._linear_arg(arg, tok, name)
        if name == "exp":
            head = FuncExpr.const(sp.exp(c0)) if not C.is_zero(c0) else ONE
            if lam.is_zero():
                return head
            return head * FuncExpr([Term(C.ONE, EZERO, lam)])
        trig = COS if name == "cos" else SIN
        if lam.is_zero():
            return FuncExpr.const(sp.cos(c0) if trig == COS else sp.sin(c0))
        cosw = FuncExpr([Term(C.ONE, trig=COS, freq=lam)])
        sinw = FuncExpr([Term(C.ONE, trig=SIN, freq=lam)])
        if C.is_zero(c0):
            return cosw if trig == COS else sinw
        cc, ss = sp.cos(c0), sp.sin(c0)
        if trig == COS:
            return cosw.scale(cc) - sinw.scale(ss)
        return sinw.scale(cc) + cosw.scale(ss)

    def _linear_arg(self, arg: FuncExpr, tok: _Tok, name: str):
        c0 = C.ZERO
        lam = EZERO
        for t in arg.terms:
            if t.is_constant():
                c0 = t.coeff
                continue
            if (
                t.tpow == EONE
                and t.expfreq.is_zero()
                and t.logpow == 0
                and t.trig == NONE
                and not t.ufuncs
            ):
                try:
                    lam = ExponentForm.from_sympy(t.coeff)
                except ValueError as exc:
                    raise self.unsupported(
                        f"{name} argument must be rational-linear in t", tok
                    ) from exc
                continue
            raise self.unsupported(f"{name} argument must be linear in t", tok)
        return c0, lam

    def _ln(self, arg: FuncExpr, tok: _Tok) -> FuncExpr:
        if arg.is_constant():
            if arg.is_zero():
                raise self.unsupported("ln(0)", tok)
            return FuncExpr.const(sp.log(arg.constant_value()))
        if len(arg.terms) == 1:
            t = arg.terms[0]
            if (
                t.tpow == EONE
                and t.expfreq.is_zero()
                and not t.logpow
                and t.trig == NONE
                and not t.ufuncs
            ):
                out = FuncExpr([Term(C.ONE, logpow=1)])
                if t.coeff != 1:
                    out = out + FuncExpr.const(sp.log(t.coeff))
                return out
        raise self.unsupported("ln argument must be t (or a constant multiple)", tok)


def _scale_form(f: ExponentForm, e: sp.Expr) -> ExponentForm:
    if f.is_zero():
        return EZERO
    return ExponentForm.from_sympy(C.mul(f.to_sympy(), e))


def parse_expr(text: str) -> FuncExpr:
    """Parse text into a canonical FuncExpr."""
    return _Parser(text).parse()


def parse_coeff(text: str) -> sp.Expr:
    """Parse a t-free expression into a coefficient."""
    e = parse_expr(text)
    if not e.is_constant():
        raise UnsupportedConstruct("expected a constant expression", 0, text)
    return e.constant_value()


# ---------------------------------------------------------------------------
# rendering


class GrammarPrinter(StrPrinter):
    """sympy printer emitting the expression grammar (``^``, ``ln``)."""

    def _print_Pow(self, expr, rational=False):
        b, e = expr.args
        if e is sp.S.NegativeOne:
            return "1/" + self.parenthesize(b, precedence(expr), strict=True)
        if e.is_Rational and e < 0 and not e.is_Integer:
            return "1/" + self._print(sp.Pow(b, -e, evaluate=False))
        base = self.parenthesize(b, precedence(expr), strict=True)
        if (e.is_Integer) or e.is_Symbol:
            ex = self._print(e)
        else:
            ex = "(" + self._print(e) + ")"
        return f"{base}^{ex}"

    def _print_log(self, expr):
        return f"ln({self._print(expr.args[0])})"

    def _print_Exp1(self, expr):
        return "exp(1)"

    def _print_Rational(self, expr):
        if expr.q == 1:
            return str(expr.p)
        return f"{expr.p}/{expr.q}"


_PRINTER = GrammarPrinter({"order": "lex"})
_TS = sp.Symbol("t")


def render_coeff(c: sp.Expr) -> str:
    return _PRINTER.doprint(c)


def _render_power(e: ExponentForm) -> str:
    if e == EONE:
        return "t"
    s = e.to_sympy()
    if (s.is_Integer and s > 0) or s.is_Symbol:
        return f"t^{render_coeff(s)}"
    return f"t^({render_coeff(s)})"


def _term_factors(t: Term) -> list[str]:
    out: list[str] = []
    if not t.tpow.is_zero():
        out.append(_render_power(t.tpow))
    if not t.expfreq.is_zero():
        out.append(f"exp({render_coeff(t.expfreq.to_sympy() * _TS)})")
    if t.logpow:
        out.append("ln(t)" if t.logpow == 1 else f"ln(t)^{t.logpow}")
    if t.trig != NONE:
        name = "cos" if t.trig == COS else "sin"
        out.append(f"{name}({render_coeff(t.freq.to_sympy() * _TS)})")
    for name, order in t.ufuncs:
        out.append(f"{name}{chr(39) * order}(t)")
    return out


def _render_term(t: Term) -> tuple[bool, str]:
    c = t.coeff
    neg = bool(c.could_extract_minus_sign())
    if neg:
        c = -c
    factors = _term_factors(t)
    if not factors:
        return neg, render_coeff(c)
    body = "*".join(factors)
    if c == 1:
        return neg, body
    cs = render_coeff(c)
    if isinstance(c, sp.Add):
        cs = f"({cs})"
    return neg, f"{cs}*{body}"


def render(e: FuncExpr) -> str:
    """Text form in the parser grammar; ``"0"`` for the zero function."""
    if e.is_zero():
        return "0"
    parts: list[str] = []
    for i, t in enumerate(e.terms):
        neg, body = _render_term(t)
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


__all__ = ["parse_expr", "parse_coeff", "render", "render_coeff", "GrammarPrinter", "ZERO"]
