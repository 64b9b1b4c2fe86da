"""Laurent-label subalgebra, its sl(5) matrix representation and the loop embedding.

Generators of the eleven-dimensional algebra are realised as 5x5 traceless
matrices, one block for the x-variables and one for the y-variables.  The
x-block is taken literally.  The y-block obtained by the plain substitution
p -> q gets the sign of ``[Y, U_y]`` wrong against the vector fields, so the
default y-block uses ``-1/(4q)`` in the X-type entry; the literal variant is
kept for reporting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import sympy as sp

from .algebra import GENERATORS, LieElement, bracket
from .exprfield import ExponentForm, FuncExpr
from .exprfield import coeff as C
from .exprfield.parser import render_coeff
from .structure import (
    Reducer,
    StructureConstants,
    is_ideal,
    lower_central_series,
    series,
    structure_constants,
)

P, Q = C.sym("p"), C.sym("q")
KINDS = ("Z", "X", "Y", "W")

L11_NAMES = ("Delta", "U", "V", "A", "P", "X", "Y", "U_x", "U_y", "V_x", "V_y")
X_BLOCK = ("Delta", "X", "U", "V", "A", "P", "U_x", "V_x")
Y_BLOCK = ("Delta", "Y", "U", "V", "A", "P", "U_y", "V_y")
GRADING = {
    "Delta": 0, "A": 1, "X": 1, "Y": 1, "P": 2, "U_x": 2, "U_y": 2,
    "U": 3, "V_x": 3, "V_y": 3, "V": 4,
}
NILRADICAL = ("A", "P", "X", "Y", "U", "V", "U_x", "U_y", "V_x", "V_y")
ABELIAN_IDEAL = ("A", "P", "U", "V", "U_x", "U_y", "V_x", "V_y")


def _E(i: int, j: int, c=1) -> sp.Matrix:
    m = sp.zeros(5, 5)
    m[i - 1, j - 1] = c
    return m


def rep_basis(block: str = "x", variant: str = "corrected") -> dict[str, sp.ImmutableMatrix]:
    """Matrices for one block, keyed by generator name (block names unified)."""
    if block not in ("x", "y") or variant not in ("corrected", "literal"):
        raise ValueError("block must be x/y and variant corrected/literal")
    r = sp.Rational
    if block == "x":
        kap = 1 / (4 * P)
    else:
        kap = 1 / (4 * Q) if variant == "literal" else -1 / (4 * Q)
    mats = {
        "Delta": sp.diag(r(11, 10), r(1, 10), r(-9, 10), r(-2, 5), r(1, 10)),
        "P": _E(1, 3, -1),
        "V": _E(1, 5),
        "A": _E(2, 3, -1),
        "U": _E(2, 5),
        "X": _E(3, 4) + _E(4, 5, kap),
    }
    s = block
    mats[f"V_{s}"] = _E(1, 4, 2)
    mats[f"U_{s}"] = _E(2, 4, 2)
    if block == "y":
        mats["Y"] = mats.pop("X")
    return {k: sp.ImmutableMatrix(v) for k, v in mats.items()}


def matrix_degree(m: sp.Matrix) -> Optional[int]:
    """Common value of (column - row) over nonzero entries, if homogeneous."""
    degs = {j - i for i in range(m.rows) for j in range(m.cols) if not C.is_zero(C.canon(m[i, j]))}
    if len(degs) == 1:
        return degs.pop()
    return None


def _canon_matrix(m: sp.Matrix) -> sp.ImmutableMatrix:
    return sp.ImmutableMatrix(m.rows, m.cols, [C.canon(x) for x in m])


# ---------------------------------------------------------------------------
# loop algebra


@dataclass(frozen=True)
class LoopElement:
    """``sum t^d (x) M_d + (sum a_d t^d) d/dt`` with finitely many terms."""

    mats: tuple = ()  # sorted (degree, ImmutableMatrix)
    der: tuple = ()  # sorted (degree, Coeff)

    @staticmethod
    def make(mats: dict | None = None, der: dict | None = None) -> "LoopElement":
        ms = []
        for d, m in (mats or {}).items():
            m = _canon_matrix(m)
            if any(not C.is_zero(x) for x in m):
                ms.append((d, m))
        der = {d: C.to_coeff(c) for d, c in (der or {}).items()}
        ds = [(d, C.canon(c)) for d, c in der.items() if not C.is_zero(c)]
        return LoopElement(tuple(sorted(ms, key=lambda x: x[0])), tuple(sorted(ds)))

    def __add__(self, other: "LoopElement") -> "LoopElement":
        mats = dict(self.mats)
        for d, m in other.mats:
            mats[d] = mats[d] + m if d in mats else m
        der = dict(self.der)
        for d, c in other.der:
            der[d] = C.add(der.get(d, C.ZERO), c)
        return LoopElement.make(mats, der)

    def scale(self, c) -> "LoopElement":
        c = C.to_coeff(c)
        return LoopElement.make({d: m * c for d, m in self.mats}, {d: C.mul(a, c) for d, a in self.der})

    def __neg__(self) -> "LoopElement":
        return self.scale(-1)

    def __sub__(self, other: "LoopElement") -> "LoopElement":
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.mats and not self.der

    def __eq__(self, other) -> bool:
        if not isinstance(other, LoopElement):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.mats, self.der))

    def __str__(self) -> str:
        parts = [f"t^{d}*{m.tolist()}" for d, m in self.mats]
        parts += [f"{render_coeff(c)}*t^{d}*d/dt" for d, c in self.der]
        return " + ".join(parts) if parts else "0"


def derivation(coeffs: dict) -> LoopElement:
    return LoopElement.make(der=coeffs)


def loop_bracket(E1: LoopElement, E2: LoopElement) -> LoopElement:
    mats: dict[int, sp.Matrix] = {}

    def acc(d, m):
        mats[d] = mats[d] + m if d in mats else m

    for i, A in E1.mats:
        for k, B in E2.mats:
            acc(i + k, A * B - B * A)
    for j, a in E1.der:
        for k, B in E2.mats:
            if k:
                acc(j + k - 1, B * C.mul(a, k))
    for j, b in E2.der:
        for i, A in E1.mats:
            if i:
                acc(j + i - 1, A * C.mul(b, -i))
    der: dict[int, sp.Expr] = {}
    for j, a in E1.der:
        for l, b in E2.der:
            if l != j:
                d = j + l - 1
                der[d] = C.add(der.get(d, C.ZERO), C.mul(C.mul(a, b), l - j))
    return LoopElement.make(mats, der)


def witt(n: int) -> LoopElement:
    """``d_n = t^n d/dt``."""
    return derivation({n: C.ONE})


def check_witt(rng=range(-3, 4)) -> list[tuple[int, int, bool]]:
    out = []
    for n, m in itertools.product(rng, rng):
        lhs = loop_bracket(witt(n), witt(m))
        rhs = witt(n + m - 1).scale(m - n)
        out.append((n, m, lhs == rhs))
    return out


def check_witt_symbolic() -> bool:
    """[t^n d, t^m d] = (m - n) t^(m+n-1) d for symbolic n, m."""
    n, m = ExponentForm.of("n"), ExponentForm.of("m")
    a, b = FuncExpr.t_power(n), FuncExpr.t_power(m)
    lhs = a * b.diff() - b * a.diff()
    rhs = FuncExpr.t_power(n + m - ExponentForm.of(1)).scale(C.sub(C.sym("m"), C.sym("n")))
    return lhs == rhs


# ---------------------------------------------------------------------------
# Laurent basis and the commutator table


def laurent_basis(kind: str, n) -> LieElement:
    return GENERATORS[kind](FuncExpr.t_power(ExponentForm.of(n)))


def table2_cell(k1: str, k2: str, n, m) -> tuple[sp.Expr, Optional[str]]:
    """Tabulated coefficient and result kind of ``[k1_{t^n}, k2_{t^m}]``."""
    n, m = sp.sympify(n), sp.sympify(m)
    h = sp.Rational(1, 2)
    table = {
        ("Z", "Z"): (m - n, "Z"),
        ("Z", "X"): (m - h * n, "X"),
        ("Z", "Y"): (m - h * n, "Y"),
        ("Z", "W"): (m, "W"),
        ("X", "Z"): (h * m - n, "X"),
        ("X", "X"): (-(m - n) / (2 * P), "W"),
        ("Y", "Z"): (h * m - n, "Y"),
        ("Y", "Y"): ((m - n) / (2 * Q), "W"),
        ("W", "Z"): (-n, "W"),
    }
    c, kind = table.get((k1, k2), (sp.Integer(0), None))
    return C.canon(c), kind


@dataclass
class CellResult:
    pair: tuple
    passed: bool
    detail: str = ""


@dataclass
class Table2Report:
    cells: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)


def table2_expected(k1: str, k2: str, n, m) -> LieElement:
    nf, mf = ExponentForm.of(n), ExponentForm.of(m)
    c, kind = table2_cell(k1, k2, nf.to_sympy(), mf.to_sympy())
    if kind is None or C.is_zero(c):
        return LieElement()
    return laurent_basis(kind, nf + mf - ExponentForm.of(1)).scale(c)


def verify_table2(n="n", m="m") -> Table2Report:
    """All sixteen cells computed with the bracket and compared to the table."""
    rep = Table2Report()
    for k1, k2 in itertools.product(KINDS, KINDS):
        got = bracket(laurent_basis(k1, n), laurent_basis(k2, m))
        want = table2_expected(k1, k2, n, m)
        rep.cells.append(CellResult((k1, k2), got == want, f"got {got}; table {want}"))
    return rep


# ---------------------------------------------------------------------------
# embedding


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def embed(kind: str, n: int, block: str = "x", variant: str = "corrected") -> LoopElement:
    """Image of ``kind_{t^n}`` using the matrices of one block."""
    if not isinstance(n, int):
        raise TypeError("Laurent degrees must be integers")
    R = rep_basis(block, variant)
    s = block
    terms: dict[int, sp.Matrix] = {}

    def put(deg, coef, mat):
        if coef:
            terms[deg] = terms.get(deg, sp.zeros(5, 5)) + mat * coef

    der = {}
    if kind == "Z":
        put(n - 1, n, R["Delta"])
        put(n - 2, _falling(n, 2), R["A"])
        put(n - 3, _falling(n, 3), R["P"])
        der = {n: C.ONE}
    elif kind == "W":
        put(n, 1, R["U"])
        put(n - 1, n, R["V"])
    elif kind in ("X", "Y"):
        if (kind == "X") != (block == "x"):
            raise ValueError(f"{kind} lives in the {kind.lower()}-block")
        put(n, 1, R[kind])
        put(n - 1, n, R[f"U_{s}"])
        put(n - 2, _falling(n, 2), R[f"V_{s}"])
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return LoopElement.make(terms, der)


def _embed_element(V: LieElement, block: str, variant: str) -> LoopElement:
    """Embed a Lie element whose labels are integer Laurent polynomials."""
    out = LoopElement()
    for kind, lbl in zip(("X", "Y", "Z", "W"), V.labels):
        for t in lbl.terms:
            laurent = t.tpow.is_integer() and t.expfreq.is_zero() and not t.logpow and not t.trig and not t.ufuncs
            if not laurent:
                raise ValueError(f"label {lbl} is not a Laurent polynomial")
            out = out + embed(kind, t.tpow.as_int(), block, variant).scale(t.coeff)
    return out


def _block_for(k1: str, k2: str) -> Optional[str]:
    ks = {k1, k2}
    if ks <= {"Z", "X", "W"}:
        return "x"
    if ks <= {"Z", "Y", "W"}:
        return "y"
    return None


@dataclass
class EmbeddingReport:
    orientation: int
    cells: list = field(default_factory=list)
    witt: list = field(default_factory=list)
    witt_symbolic: bool = True

    @property
    def passed(self) -> bool:
        return (
            all(c.passed for c in self.cells)
            and all(ok for *_, ok in self.witt)
            and self.witt_symbolic
        )

    def failures(self) -> list:
        return [c for c in self.cells if not c.passed]


def embedding_orientation(variant: str = "corrected") -> int:
    """+1 for a homomorphism, -1 for an anti-homomorphism, from the (Z,W) cell."""
    lhs = loop_bracket(embed("Z", 1), embed("W", 1))
    rhs = _embed_element(table2_expected("Z", "W", 1, 1), "x", variant)
    if lhs == rhs:
        return 1
    if lhs == -rhs:
        return -1
    raise ValueError("(Z, W) cell matches neither orientation")


def verify_embedding(ns=range(-3, 4), ms=None, variant: str = "corrected") -> EmbeddingReport:
    """Compare loop brackets with embedded table entries for every pair.

    Pairs inside {Z, X, W} use the x-block and pairs inside {Z, Y, W} the
    y-block.  X-Y pairs use the direct sum of the two blocks, where they
    commute.
    """
    ms = ns if ms is None else ms
    sign = embedding_orientation(variant)
    rep = EmbeddingReport(sign)
    for k1, k2 in itertools.product(KINDS, KINDS):
        block = _block_for(k1, k2)
        for n, m in itertools.product(ns, ms):
            want_el = table2_expected(k1, k2, n, m)
            if block is None:
                ok = want_el.is_zero()  # blocks of a direct sum commute
                rep.cells.append(CellResult((k1, k2, n, m), ok, "direct-sum blocks"))
                continue
            lhs = loop_bracket(embed(k1, n, block, variant), embed(k2, m, block, variant))
            rhs = _embed_element(want_el, block, variant).scale(sign)
            ok = lhs == rhs
            rep.cells.append(CellResult((k1, k2, n, m), ok, "" if ok else f"{block}-block mismatch"))
    rep.witt = check_witt()
    rep.witt_symbolic = check_witt_symbolic()
    return rep


# ---------------------------------------------------------------------------
# the eleven-dimensional algebra


def _express(mat: sp.Matrix, basis: dict) -> Optional[dict]:
    names = list(basis)
    red = Reducer()
    for nm in names:
        red.insert({i: x for i, x in enumerate(basis[nm]) if not C.is_zero(x)})
    coords, resid = red.express({i: C.canon(x) for i, x in enumerate(mat) if not C.is_zero(C.canon(x))})
    if resid:
        return None
    return {names[i]: c for i, c in coords.items() if not C.is_zero(c)}


def l11_structure_constants(variant: str = "corrected") -> tuple[StructureConstants, list]:
    """Structure constants over ``L11_NAMES`` from matrix commutators.

    Returns the constants and a list of pairs whose commutator left the
    block span (empty when the representation closes).
    """
    bx, by = rep_basis("x", variant), rep_basis("y", variant)
    idx = {nm: i for i, nm in enumerate(L11_NAMES)}
    c = {}
    problems = []
    for a, b in itertools.combinations(L11_NAMES, 2):
        if a in X_BLOCK and b in X_BLOCK:
            basis = bx
        elif a in Y_BLOCK and b in Y_BLOCK:
            basis = by
        else:
            continue  # X-only and Y-only generators commute
        comm = basis[a] * basis[b] - basis[b] * basis[a]
        coords = _express(comm, basis)
        if coords is None:
            problems.append((a, b))
            continue
        vec = [C.ZERO] * len(L11_NAMES)
        for nm, val in coords.items():
            vec[idx[nm]] = val
        c[(idx[a], idx[b])] = tuple(vec)
    return StructureConstants(len(L11_NAMES), c, names=list(L11_NAMES)), problems


def l11_vector_fields() -> dict:
    """The eleven generators as sympy vector fields on (t, x, y, u, v)."""
    from .vectorfield import COORDS, p, q, u, v, x, y

    def F(**kw):
        d = {c: sp.Integer(0) for c in COORDS}
        names = {"x": x, "y": y, "u": u, "v": v}
        for k, val in kw.items():
            d[names[k]] = val
        return d

    def sc(a, f):
        return {c: a * f[c] for c in COORDS}

    Ufield = F(u=sp.I * u)
    Vfield = F(v=-sp.Rational(1, 2))
    quad = (p * y**2 - q * x**2) / (8 * p * q)
    return {
        "Delta": F(x=x / 2, y=y / 2, u=-u / 2, v=-v),
        "U": Ufield,
        "V": Vfield,
        "A": sc(quad, Ufield),
        "P": sc(quad, Vfield),
        "X": F(x=sp.Integer(1)),
        "Y": F(y=sp.Integer(1)),
        "U_x": sc(-x / (2 * p), Ufield),
        "U_y": sc(y / (2 * q), Ufield),
        "V_x": sc(-x / (2 * p), Vfield),
        "V_y": sc(y / (2 * q), Vfield),
    }


def l11_vector_field_constants() -> StructureConstants:
    """Independent structure constants from vector-field commutators."""
    from .vectorfield import COORDS, commutator, u, v, x, y

    fields = l11_vector_fields()
    names = list(L11_NAMES)
    cs = sp.symbols(f"c0:{len(names)}")
    c = {}
    for i, j in itertools.combinations(range(len(names)), 2):
        comm = commutator(fields[names[i]], fields[names[j]])
        eqs = []
        for crd in COORDS:
            e = sp.expand(comm[crd] - sum(cs[k] * fields[names[k]][crd] for k in range(len(names))))
            if e != 0:
                eqs.extend(sp.Poly(e, x, y, u, v).coeffs())
        sol = sp.solve(eqs, cs, dict=True) if eqs else [{}]
        if not sol:
            raise ValueError(f"vector fields {names[i]}, {names[j]} do not close")
        c[(i, j)] = tuple(C.canon(sol[0].get(s, sp.Integer(0))) for s in cs)
    return StructureConstants(len(names), c, names=names)


@dataclass
class L11Report:
    solvable: bool
    derived: list
    nilradical_ideal: bool
    nilradical_nilpotent: bool
    abelian_ideal: bool
    abelian_pairs_zero: int
    grading_additive: bool
    delta_x_proportional: bool
    closure_problems: list
    vector_field_agreement: Optional[bool] = None
    vector_field_mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.solvable and self.nilradical_ideal and self.nilradical_nilpotent
            and self.abelian_ideal and self.abelian_pairs_zero == 28
            and self.grading_additive and self.delta_x_proportional
            and not self.closure_problems and self.vector_field_agreement is not False
        )


def _vec(names, sc) -> list:
    return [[C.ONE if sc.names[k] == nm else C.ZERO for k in range(sc.n)] for nm in names]


def check_L11(variant: str = "corrected", with_vector_fields: bool = True) -> L11Report:
    sc, problems = l11_structure_constants(variant)
    ser = series(sc)
    nil = _vec(NILRADICAL, sc)
    ab = _vec(ABELIAN_IDEAL, sc)
    nil_ideal = is_ideal(sc, nil)
    nil_nilpotent = False
    if nil_ideal:
        sub = sc.subalgebra(nil)
        nil_nilpotent = len(lower_central_series(sub)[-1]) == 0
    ab_zero = sum(
        1 for a, b in itertools.combinations(ab, 2)
        if all(C.is_zero(x) for x in sc.bracket_vec(a, b))
    )
    graded = True
    for i, j in itertools.combinations(range(sc.n), 2):
        w = sc.pair(i, j)
        for k, val in enumerate(w):
            if not C.is_zero(val):
                if GRADING[sc.names[k]] != GRADING[sc.names[i]] + GRADING[sc.names[j]]:
                    graded = False
    di, xi = L11_NAMES.index("Delta"), L11_NAMES.index("X")
    dx = sc.pair(di, xi)
    dx_prop = all(C.is_zero(v) for k, v in enumerate(dx) if k != xi) and not C.is_zero(dx[xi])
    rep = L11Report(
        ser.solvable, ser.derived, nil_ideal, nil_nilpotent, is_ideal(sc, ab), ab_zero,
        graded, dx_prop, problems,
    )
    if with_vector_fields:
        vf = l11_vector_field_constants()
        mism = []
        for (i, j), vals in sc.c.items():
            if any(not C.equal(a, b) for a, b in zip(vals, vf.c[(i, j)])):
                mism.append((sc.names[i], sc.names[j]))
        rep.vector_field_agreement = not mism
        rep.vector_field_mismatches = mism
    return rep


def l8_basis() -> list[LieElement]:
    return [laurent_basis(k, n) for n in (1, 0) for k in ("X", "Y", "Z", "W")]


def grading_ok(variant: str = "corrected") -> bool:
    for block in ("x", "y"):
        R = rep_basis(block, variant)
        for nm, m in R.items():
            d = matrix_degree(m)
            if d != GRADING[nm]:
                return False
            if m.trace() != 0:
                return False
    return True


L8_NILPOTENT = ("X_t", "Y_t", "W_t", "X_1", "Y_1", "Z_1", "W_1")


@dataclass
class L8Report:
    solvable: bool
    derived: list
    ideal: bool
    nilpotent: bool
    lower_central: list

    @property
    def passed(self) -> bool:
        return self.solvable and self.ideal and self.nilpotent


def check_L8() -> L8Report:
    names = [f"{k}_{'t' if n else '1'}" for n in (1, 0) for k in ("X", "Y", "Z", "W")]
    sc = structure_constants(l8_basis())
    ser = series(sc)
    vecs = [[C.ONE if names[k] == nm else C.ZERO for k in range(sc.n)] for nm in L8_NILPOTENT]
    ideal = is_ideal(sc, vecs)
    lc = [len(x) for x in lower_central_series(sc.subalgebra(vecs))]
    return L8Report(ser.solvable, ser.derived, ideal, lc[-1] == 0, lc)
