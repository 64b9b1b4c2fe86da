"""Independent oracles: numeric eigen-structure classification of 2x2 matrices.

The class of a matrix up to conjugation and nonzero scaling is read off from
floating eigenvalues (numpy), with no use of the exact classifier.  The
brute-force part conjugates and rescales the input by random rational
matrices and requires every image to land in the same class.
"""

from __future__ import annotations

import random

import numpy as np
import sympy as sp

from gen import random_invertible, random_rational


def numeric_class(m, tol: float = 1e-6) -> tuple[str, float | None]:
    a = np.array(m.tolist() if hasattr(m, "tolist") else m, dtype=float)
    scale = max(1.0, float(np.abs(a).max()))
    if np.abs(a).max() < tol:
        return ("M1_zero", None)
    ev = np.linalg.eigvals(a)
    small = [abs(e) < tol * scale for e in ev]
    if all(small):
        return ("M3_nilpotent", None)
    if any(small):
        return ("M2_rank1_diag", None)
    if abs(ev[0].imag) > tol * scale:
        re, im = ev[0].real, abs(ev[0].imag)
        return ("M5_complex", abs(re) / im)
    l1, l2 = sorted(ev.real, key=abs, reverse=True)
    if abs(l1 - l2) < tol * scale:
        if np.allclose(a, l1 * np.eye(2), atol=tol * scale):
            return ("M4_diag", 1.0)
        return ("M6_jordan", None)
    return ("M4_diag", l2 / l1)


def same_class(x: tuple, y: tuple, tol: float = 1e-6) -> bool:
    if x[0] != y[0]:
        return False
    if x[1] is None or y[1] is None:
        return x[1] is None and y[1] is None
    return abs(x[1] - y[1]) < tol * max(1.0, abs(x[1]))


def brute_force_class(m: sp.Matrix, rng: random.Random, trials: int = 4) -> tuple[str, float | None]:
    """Class agreed on by ``m`` and ``trials`` random images ``s P m P^-1``."""
    ref = numeric_class(m)
    for _ in range(trials):
        P = random_invertible(rng)
        s = random_rational(rng, 1, 5) * rng.choice([1, -1])
        img = s * P * m * P.inv()
        got = numeric_class(img)
        if not same_class(got, ref):
            raise AssertionError(f"oracle inconsistent on {m}: {ref} vs {got}")
    return ref


def classifier_as_numeric(mc) -> tuple[str, float | None]:
    """Map an exact MClass to the oracle's (tag, float alpha) convention."""
    if mc.alpha is None:
        return (mc.tag, None)
    a = complex(sp.N(mc.alpha))
    if mc.tag == "M5_complex":
        return (mc.tag, abs(a.real))
    return (mc.tag, a.real)


def agrees(oracle: tuple, exact: tuple) -> bool:
    if same_class(oracle, exact):
        return True
    # diag(1, a) ~ diag(1, 1/a)
    return (oracle[0] == exact[0] == "M4_diag" and oracle[1] is not None and exact[1] is not None
            and abs(oracle[1] * exact[1] - 1) < 1e-6)
