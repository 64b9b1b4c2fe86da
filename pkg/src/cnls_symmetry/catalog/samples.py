"""Sample assignments for the free functions and parameters of catalog entries.

A recipe is an ordered mapping from names to expression text.  Values may
refer to names bound earlier in the same recipe.  A value written as
``int: <expr>`` binds the primitive of ``<expr>`` (zero constant of
integration), which is how constraint partners such as ``Phi`` in
``Phi' = eps*(phi*psi' - phi'*psi)`` are produced.  Parameters may be bound to
rationals or to expressions in other parameters (``q: 4*p`` fixes eps = 4).
Unbound parameters stay symbolic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy as sp

from ..exprfield import FuncExpr, antidifferentiate, parse_coeff, parse_expr, substitute_funcs, substitute_params
from ..exprfield import coeff as C
from .model import CatalogEntry

P, Q = C.sym("p"), C.sym("q")


@dataclass
class SampleAssignment:
    funcs: dict = field(default_factory=dict)  # name -> FuncExpr
    params: dict = field(default_factory=dict)  # name -> Coeff
    label: str = ""

    def param_bindings(self) -> dict:
        """Bindings with eps expanded to q/p and p, q resolved."""
        eps = C.div(Q, P)
        binds = dict(self.params)
        if "p" in binds or "q" in binds:
            sub = {P: binds.get("p", P), Q: binds.get("q", Q)}
            eps = C.canon(eps.subs(sub, simultaneous=True))
        binds["eps"] = eps
        return binds

    def apply(self, e: FuncExpr) -> FuncExpr:
        if self.funcs:
            e = substitute_funcs(e, self.funcs)
        return substitute_params(e, self.param_bindings())

    def apply_coeff(self, c) -> sp.Expr:
        binds = self.param_bindings()
        subs = {C.sym(k): v for k, v in binds.items()}
        return C.canon(sp.sympify(c).subs(subs, simultaneous=True))

    def describe(self) -> str:
        from ..exprfield import render
        from ..exprfield.parser import render_coeff

        parts = [f"{k}={render(v)}" for k, v in self.funcs.items()]
        parts += [f"{k}={render_coeff(v)}" for k, v in self.params.items()]
        return ", ".join(parts) if parts else "symbolic"


def build_sample(entry: CatalogEntry, recipe: dict, label: str = "") -> SampleAssignment:
    funcs_needed = set(entry.free_functions())
    out = SampleAssignment(label=label)
    for name, text in recipe.items():
        text = text.strip()
        if name in funcs_needed:
            if text.startswith("int:"):
                integrand = parse_expr(text[4:])
                if out.funcs:
                    integrand = substitute_funcs(integrand, out.funcs)
                val = antidifferentiate(integrand)
            else:
                val = parse_expr(text)
                if out.funcs:
                    val = substitute_funcs(val, out.funcs)
            out.funcs[name] = val
        else:
            out.params[name] = parse_coeff(text)
    return out


# explicit recipes; entries without one get parameter-only defaults
RECIPES: dict[str, list[dict]] = {
    "L_{1,3}": [{"phi": "t^2"}, {"phi": "exp(-t)"}, {"phi": "cos(t)"}],
    "L_{1,4}": [{"psi": "t^2"}, {"psi": "exp(-t)"}, {"psi": "t*sin(t)"}],
    "L_{2,4}": [{"psi": "t^2"}, {"psi": "exp(-t)"}, {"psi": "sin(t)"}],
    "L_{2,5}": [{"omega": "t^2"}, {"omega": "exp(-t)"}, {"omega": "ln(t)"}],
    "L_{2,6}": [
        {"phi": "t", "psi": "1", "Phi": "int: eps*(phi(t)*psi'(t) - phi'(t)*psi(t))"},
        {"phi": "t^2", "psi": "1", "Phi": "int: eps*(phi(t)*psi'(t) - phi'(t)*psi(t))"},
        {"phi": "exp(-t)", "psi": "t", "Phi": "int: eps*(phi(t)*psi'(t) - phi'(t)*psi(t))", "p": "2", "q": "-3"},
    ],
    "L_{2,7}": [
        {"phi": "t^2", "psi": "exp(-t)"},
        {"phi": "exp(-t)", "psi": "t^2"},
        {"phi": "cos(t)", "psi": "t"},
    ],
    "L_{2,8}": [
        {"phi": "t^2", "psi": "exp(-t)"},
        {"phi": "1", "psi": "t"},
        {"phi": "cos(t)", "psi": "sin(t)"},
    ],
    "L0_{3,4}": [
        {"psi": "t^2", "omega": "exp(-t)"},
        {"psi": "exp(-t)", "omega": "t^2"},
        {"psi": "sin(t)", "omega": "1"},
    ],
    "L0_{3,5}": [
        {"phi": "t", "psi": "1", "Phi": "-eps*t", "f": "1", "g": "-eps*t", "k": "t"},
        {"phi": "t", "psi": "1", "Phi": "-eps*t", "f": "t", "g": "1", "k": "exp(-t)"},
        {"phi": "t^2", "psi": "1", "Phi": "-eps*t^2", "f": "1", "g": "-eps*t^2", "k": "t^2", "p": "1", "q": "2"},
    ],
    "L0_{3,7}": [
        {"phi": "t^2", "psi": "t", "f": "1", "g": "int: eps*(psi(t)*f'(t) - psi'(t)*f(t))"},
        {"phi": "exp(-t)", "psi": "t^2", "f": "t", "g": "int: eps*(psi(t)*f'(t) - psi'(t)*f(t))"},
        {"phi": "t", "psi": "1", "f": "exp(-t)", "g": "int: eps*(psi(t)*f'(t) - psi'(t)*f(t))", "p": "-1", "q": "3"},
    ],
    "L0_{3,8}": [
        {"phi": "t^2", "psi": "exp(-t)", "f": "1", "g": "t"},
        {"phi": "1", "psi": "t", "f": "t^2", "g": "0"},
        {"phi": "cos(t)", "psi": "sin(t)", "f": "exp(-t)", "g": "exp(-t)"},
    ],
    "L_{3,13}": [
        {"q": "p", "beta": "1", "g": "t^2"},
        {"q": "4*p", "beta": "1/2", "g": "exp(-t)"},
        {"p": "-1", "q": "-1", "beta": "-1", "g": "cos(t)"},
    ],
    "L_{3,2}": [
        {"q": "p", "alpha": "1"},
        {"q": "4*p", "alpha": "2", "beta": "1"},
        {"p": "-1", "q": "-9", "alpha": "-3", "beta": "0"},
    ],
    "L_{3,11}": [
        {"omega": "t", "f": "int: -2*p*alpha^2*omega(t)", "psi": "t^2"},
        {"omega": "exp(-t)", "alpha": "1/2", "f": "int: -2*p*alpha^2*omega(t)", "psi": "1"},
        {"omega": "1", "alpha": "2", "p": "3", "f": "int: -2*p*alpha^2*omega(t)", "psi": "exp(-t)"},
    ],
    "L_{3,19}": [
        {"q": "p", "beta": "1"},
        {"q": "4*p", "beta": "1/2", "nu": "2"},
        {"p": "2", "q": "2", "beta": "-1", "nu": "0"},
    ],
    "L_{3,20}": [
        {"q": "p", "beta": "1", "g": "t^2"},
        {"q": "4*p", "beta": "1/2", "g": "exp(-t)"},
        {"p": "2", "q": "2", "beta": "-1", "g": "t"},
    ],
    "L_{3,25}": [
        {"phi": "1", "psi": "t", "f": "1", "g": "int: 2*alpha*q*phi(t) + eps*(psi(t)*f'(t) - f(t)*psi'(t))"},
        {"alpha": "2", "phi": "t", "psi": "1", "f": "t^2",
         "g": "int: 2*alpha*q*phi(t) + eps*(psi(t)*f'(t) - f(t)*psi'(t))"},
        {"alpha": "-1/2", "p": "1", "q": "2", "phi": "exp(-t)", "psi": "t^2", "f": "t",
         "g": "int: 2*alpha*q*phi(t) + eps*(psi(t)*f'(t) - f(t)*psi'(t))"},
    ],
    "L_{3,25}/alt": [
        {"phi": "1", "psi": "t", "f": "1", "g": "int: 2*q*phi(t) + eps*(psi(t)*f'(t) - f(t)*psi'(t))"},
        {"phi": "t", "psi": "1", "f": "t^2", "g": "int: 2*q*phi(t) + eps*(psi(t)*f'(t) - f(t)*psi'(t))"},
        {"p": "1", "q": "2", "phi": "exp(-t)", "psi": "t^2", "f": "t",
         "g": "int: 2*q*phi(t) + eps*(psi(t)*f'(t) - f(t)*psi'(t))"},
    ],
    "L_{3,26}": [
        {"phi": "t", "g": "int: 2*q*phi(t)", "k": "exp(-t)"},
        {"phi": "exp(-t)", "g": "int: 2*q*phi(t)", "k": "t^2"},
        {"phi": "1", "g": "int: 2*q*phi(t)", "k": "0", "p": "1", "q": "-1"},
    ],
    "L_{3,15}": [
        {"q": "p", "beta": "1", "g": "t^2"},
        {"q": "4*p", "beta": "1/2", "a": "3", "g": "exp(-t)"},
        {"p": "-1", "q": "-1", "beta": "-1", "a": "1/2", "g": "cos(t)"},
    ],
    "L_{3,17}": [
        {"a": "0", "rho": "1", "beta": "0", "q": "p", "delta": "1", "sigma": "0"},
        {"rho": "1", "beta": "1", "q": "2*p", "delta": "0", "sigma": "1"},
        {"a": "-1", "rho": "2", "beta": "1", "p": "1", "q": "5", "delta": "1", "sigma": "2"},
    ],
    "L_{3,18}": [
        {"a": "0", "beta": "1", "q": "p", "f": "t^2"},
        {"beta": "2", "q": "4*p", "f": "exp(-t)"},
        {"a": "-1", "beta": "-1", "p": "1", "q": "1", "f": "sin(t)"},
    ],
    "L_{3,21}": [
        {"q": "p", "beta": "1"},
        {"q": "4*p", "beta": "1/2", "nu": "1", "sigma": "2"},
        {"p": "-1", "q": "-1", "beta": "-1", "nu": "0", "sigma": "0"},
    ],
    "L_{3,22}": [
        {"q": "p", "beta": "1", "g": "t^2"},
        {"q": "4*p", "beta": "1/2", "g": "exp(-t)"},
        {"p": "-1", "q": "-1", "beta": "-1", "g": "t"},
    ],
}
RECIPES["L_{3,17}/literal"] = RECIPES["L_{3,17}"]
RECIPES["L_{3,18}/literal"] = RECIPES["L_{3,18}"]

# distinct small rationals for parameter-only entries
_VALUES_A = ["2", "3", "5", "7", "11", "13"]
_VALUES_B = ["1/2", "-1/3", "3/4", "-2/5", "5/7", "4/9"]


def default_recipes(entry: CatalogEntry) -> list[dict]:
    names = entry.free_params()
    second = dict(zip(names, _VALUES_A))
    third = dict(zip(names, _VALUES_B))
    third.update({"p": "1", "q": "-2"})
    return [{}, second, third]


def samples_for(entry: CatalogEntry, count: int | None = None) -> list[SampleAssignment]:
    """At least three sample assignments (``count`` caps the number used)."""
    recipes = RECIPES.get(entry.id)
    if recipes is None:
        if entry.free_functions():
            raise KeyError(f"no sample recipe for {entry.id}")
        recipes = default_recipes(entry)
    out = [build_sample(entry, r, f"{entry.id}#{i}") for i, r in enumerate(recipes)]
    return out[:count] if count else out
