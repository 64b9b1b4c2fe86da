"""Numeric oracle: group orbit of a constant solution and finite-difference residuals.

The seed is the constant solution ``u = a, v = b`` with ``b = r a^2 / 2``.
Applying the group element generated by ``X_f + Y_g + W_k`` (no t-flow) gives
a new solution.  Expressed in the new coordinates, the phase and the shift of
v must be evaluated at the preimage point ``(x - eps f, y - eps g)``; this is
what makes the residuals of the system vanish identically.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..exprfield import DomainError, FuncExpr, as_funcexpr, eval_numeric, nth_derivative


def _real_fn(e: FuncExpr) -> Callable[[float], float]:
    if e.is_zero():
        return lambda t: 0.0
    return lambda t: eval_numeric(e, t)


@dataclass
class SolutionFamily:
    a: float
    b: float
    f: FuncExpr
    g: FuncExpr
    k: FuncExpr
    eps_g: float
    p: float
    q: float
    r: float

    def __post_init__(self):
        self._f = [_real_fn(nth_derivative(self.f, n)) for n in range(3)]
        self._g = [_real_fn(nth_derivative(self.g, n)) for n in range(3)]
        self._k = [_real_fn(nth_derivative(self.k, n)) for n in range(2)]

    def _pieces(self, t, x, y):
        e, p, q = self.eps_g, self.p, self.q
        f, df, d2f = (fn(t) for fn in self._f)
        g, dg, d2g = (fn(t) for fn in self._g)
        k, dk = (fn(t) for fn in self._k)
        x0, y0 = x - e * f, y - e * g
        sx, sy = 2 * x0 + e * f, 2 * y0 + e * g
        theta = e / (4 * p * q) * (4 * p * q * k - q * sx * df + p * sy * dg)
        shift = e / (8 * p * q) * (4 * p * q * dk - q * sx * d2f + p * sy * d2g)
        return theta, shift

    def u(self, t: float, x: float, y: float) -> complex:
        theta, _ = self._pieces(t, x, y)
        return self.a * cmath.exp(1j * theta)

    def v(self, t: float, x: float, y: float) -> float:
        _, shift = self._pieces(t, x, y)
        return self.b - shift


def constant_orbit_solution(a: float, f, g, k, eps_g: float, p: float, q: float, r: float) -> SolutionFamily:
    f, g, k = (as_funcexpr(z) for z in (f, g, k))
    for z in (f, g, k):
        if z.param_names() or z.ufunc_names():
            raise DomainError("labels must be free of parameters and unknown functions")
    return SolutionFamily(a, r * a * a / 2, f, g, k, eps_g, p, q, r)


class _Fields:
    """Evaluable (u, v) pair, optionally reflected."""

    def __init__(self, fam: SolutionFamily, axis: str | None = None):
        self.fam = fam
        self.sx = -1.0 if axis in ("x", "xy") else 1.0
        self.sy = -1.0 if axis in ("y", "xy") else 1.0
        self.su = -1.0 if axis == "u" else 1.0

    def u(self, t, x, y):
        return self.su * self.fam.u(t, self.sx * x, self.sy * y)

    def v(self, t, x, y):
        return self.fam.v(t, self.sx * x, self.sy * y)


def _residuals(F: _Fields, fam: SolutionFamily, point, h: float) -> tuple[float, float]:
    if h <= 0:
        raise ValueError("step must be positive")
    t, x, y = point
    p, q, r = fam.p, fam.q, fam.r
    u0 = F.u(t, x, y)
    v0 = F.v(t, x, y)
    ut = (F.u(t + h, x, y) - F.u(t - h, x, y)) / (2 * h)
    uxx = (F.u(t, x + h, y) - 2 * u0 + F.u(t, x - h, y)) / h**2
    uyy = (F.u(t, x, y + h) - 2 * u0 + F.u(t, x, y - h)) / h**2
    vxx = (F.v(t, x + h, y) - 2 * v0 + F.v(t, x - h, y)) / h**2
    vyy = (F.v(t, x, y + h) - 2 * v0 + F.v(t, x, y - h)) / h**2

    def mod2(xx):
        return abs(F.u(t, xx, y)) ** 2

    m_xx = (mod2(x + h) - 2 * mod2(x) + mod2(x - h)) / h**2
    r1 = 1j * ut - p * uxx + q * uyy + r * abs(u0) ** 2 * u0 - 2 * u0 * v0
    r2 = p * vxx + q * vyy - p * r * m_xx
    if not (np.isfinite(abs(r1)) and np.isfinite(r2)):
        raise DomainError("non-finite residual")
    return abs(r1), abs(r2)


def fd_residual(family: SolutionFamily, point, step: float) -> tuple[float, float]:
    """Central-difference residual magnitudes (|R1|, |R2|) at ``point``."""
    return _residuals(_Fields(family), family, point, step)


def reflect_orbit_check(family: SolutionFamily, axis: str, point, step: float) -> tuple[float, float]:
    if axis not in ("x", "y", "xy", "u"):
        raise ValueError(f"unknown reflection axis {axis!r}")
    return _residuals(_Fields(family, axis), family, point, step)


# the families used by the suite; (f, g, k) as expression text
FAMILIES = [
    ("t", "t^2", "1"),
    ("t^2", "0", "t"),
    ("exp(-t)", "t", "cos(t)"),
    ("sin(t)", "cos(t)", "t^2"),
    ("t", "-t", "exp(-t)"),
]


@dataclass
class RichardsonResult:
    family: tuple
    point: tuple
    coarse: tuple
    fine: tuple
    ratio: float
    r2_max: float

    @property
    def passed(self) -> bool:
        return 3.5 <= self.ratio <= 4.5


R2_NOISE = 1e-6


def richardson_suite(seed: int = 0, points: int = 3, h: float = 1e-2, eps_g: float = 0.5,
                     p: float = 1.0, q: float = 2.0, r: float = 1.0, a: float = 1.0) -> list[RichardsonResult]:
    """Halve the step from ``h`` to ``h/2`` and record the R1 ratio for each family and point.

    R2 sits at rounding level for these families (v is affine in x and y and
    |u| is constant), so it is reported as a magnitude, not a ratio.
    """
    rng = np.random.default_rng(seed)
    pts = [
        (float(rng.uniform(0.5, 1.5)), float(rng.uniform(-1, 1)), float(rng.uniform(-1, 1)))
        for _ in range(points)
    ]
    out = []
    for fam_txt in FAMILIES:
        fam = constant_orbit_solution(a, *fam_txt, eps_g=eps_g, p=p, q=q, r=r)
        for pt in pts:
            c = fd_residual(fam, pt, h)
            fnr = fd_residual(fam, pt, h / 2)
            ratio = c[0] / fnr[0] if fnr[0] else float("inf")
            out.append(RichardsonResult(fam_txt, pt, c, fnr, ratio, max(c[1], fnr[1])))
    return out
