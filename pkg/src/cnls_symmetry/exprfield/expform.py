"""Exponent forms: rational constants plus rational-linear parameter parts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import sympy as sp

from .coeff import sym


@dataclass(frozen=True, order=True)
class ExponentForm:
    """``rat + sum(c_i * name_i)`` with exact rational coefficients.

    ``lin`` is a tuple of ``(name, coefficient)`` pairs sorted by name with no
    zero coefficients, so structural equality is mathematical equality.
    """

    rat: Fraction = Fraction(0)
    lin: tuple[tuple[str, Fraction], ...] = ()

    def __hash__(self) -> int:
        # Fraction hashing is slow and forms are hashed constantly as term keys
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((self.rat.numerator, self.rat.denominator, self.lin))
            object.__setattr__(self, "_h", h)
        return h

    @staticmethod
    def make(rat=0, lin: Mapping[str, Fraction] | None = None) -> "ExponentForm":
        items = tuple(
            sorted((n, Fraction(c)) for n, c in (lin or {}).items() if c != 0)
        )
        return ExponentForm(Fraction(rat), items)

    @staticmethod
    def of(value) -> "ExponentForm":
        if isinstance(value, ExponentForm):
            return value
        if isinstance(value, (int, Fraction)):
            return ExponentForm(Fraction(value))
        if isinstance(value, str):
            return ExponentForm(Fraction(0), ((value, Fraction(1)),))
        return ExponentForm.from_sympy(value)

    @staticmethod
    def from_sympy(expr) -> "ExponentForm":
        """Read a sympy expression that must be rational-linear in symbols."""
        expr = sp.sympify(expr)
        if expr.is_Rational:
            return ExponentForm(Fraction(int(expr.p), int(expr.q)))
        syms = sorted(expr.free_symbols, key=lambda s: s.name)
        if any(not isinstance(s, sp.Symbol) for s in syms):
            raise ValueError(f"not a linear exponent: {expr}")
        try:
            poly = sp.Poly(sp.expand(expr), *syms, domain="QQ")
        except (sp.PolynomialError, sp.CoercionFailed, sp.GeneratorsNeeded) as exc:
            raise ValueError(f"not a linear exponent: {expr}") from exc
        if poly.total_degree() > 1:
            raise ValueError(f"not a linear exponent: {expr}")
        rat = Fraction(0)
        lin: dict[str, Fraction] = {}
        for monom, c in poly.terms():
            fc = Fraction(int(c.numerator), int(c.denominator))
            if sum(monom) == 0:
                rat = fc
            else:
                lin[syms[monom.index(1)].name] = fc
        return ExponentForm.make(rat, lin)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "ExponentForm") -> "ExponentForm":
        other = ExponentForm.of(other)
        if not other.lin:
            if not other.rat:
                return self
            return ExponentForm(self.rat + other.rat, self.lin)
        if not self.lin and not self.rat:
            return other
        lin = dict(self.lin)
        for n, c in other.lin:
            lin[n] = lin.get(n, Fraction(0)) + c
        return ExponentForm.make(self.rat + other.rat, lin)

    def __neg__(self) -> "ExponentForm":
        return ExponentForm(-self.rat, tuple((n, -c) for n, c in self.lin))

    def __sub__(self, other: "ExponentForm") -> "ExponentForm":
        return self + (-ExponentForm.of(other))

    def scale(self, r) -> "ExponentForm":
        r = Fraction(r)
        if r == 0:
            return ExponentForm()
        return ExponentForm(self.rat * r, tuple((n, c * r) for n, c in self.lin))

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.rat == 0 and not self.lin

    def is_rational(self) -> bool:
        return not self.lin

    def is_integer(self) -> bool:
        return not self.lin and self.rat.denominator == 1

    def is_nonneg_integer(self) -> bool:
        return self.is_integer() and self.rat >= 0

    def leading_sign(self) -> int:
        """Sign of the first nonzero component (rational part first)."""
        if self.rat != 0:
            return 1 if self.rat > 0 else -1
        for _, c in self.lin:
            return 1 if c > 0 else -1
        return 0

    # conversions ----------------------------------------------------------
    def to_sympy(self) -> sp.Expr:
        out = sp.Rational(self.rat.numerator, self.rat.denominator)
        for n, c in self.lin:
            out += sp.Rational(c.numerator, c.denominator) * sym(n)
        return out

    def as_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return int(self.rat)

    def numeric(self, params: Mapping[str, float]) -> float:
        val = float(self.rat)
        for n, c in self.lin:
            if n not in params:
                from .errors import UnboundSymbol

                raise UnboundSymbol(f"unbound symbol: {n}")
            val += float(c) * float(params[n])
        return val

    def names(self) -> set[str]:
        return {n for n, _ in self.lin}

    def __str__(self) -> str:
        return str(self.to_sympy())


EZERO = ExponentForm()
EONE = ExponentForm(Fraction(1))
