"""Finite-dimensional analysis of spans of Lie elements.

Linear algebra runs over the coefficient field with exact elimination.  When
a pivot is a non-constant parameter expression the elimination proceeds
generically and records ``expr != 0`` as a side condition.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Hashable, Optional, Sequence

import sympy as sp

from .algebra import SLOTS, LieElement, bracket
from .exprfield import FuncExpr, Term
from .exprfield import coeff as C
from .exprfield.parser import render_coeff

Vec = dict  # key -> Coeff, zero entries omitted


class NotClosed(Exception):
    def __init__(self, pair: tuple[int, int], residual: LieElement):
        self.pair = pair
        self.residual = residual
        super().__init__(f"bracket of basis elements {pair} leaves the span; residual {residual}")


class LinearlyDependent(ValueError):
    def __init__(self, dependency: list):
        self.dependency = dependency
        super().__init__(f"elements are linearly dependent: {dependency}")


class JacobiViolation(ValueError):
    pass


class UndecidableSign(ValueError):
    pass


class NoRationalAdaptedBasis(ValueError):
    pass


class IdealSearchFailed(ValueError):
    pass


# ---------------------------------------------------------------------------
# sparse vectors


def _vadd(a: Vec, b: Vec, s=C.ONE) -> Vec:
    out = dict(a)
    for k, v in b.items():
        val = C.add(out.get(k, C.ZERO), C.mul(s, v)) if k in out else C.mul(s, v)
        if C.is_zero(val):
            out.pop(k, None)
        else:
            out[k] = val
    return out


def _vscale(a: Vec, s) -> Vec:
    if C.is_zero(s):
        return {}
    return {k: C.mul(s, v) for k, v in a.items()}


def _key_order(k):
    return repr(k) if not isinstance(k, int) else k


class Reducer:
    """Incremental row echelon form with provenance of every row."""

    def __init__(self):
        self.rows: list[tuple[Hashable, Vec, Vec]] = []
        self.count = 0
        self.side_conditions: list[str] = []

    def _reduce(self, vec: Vec) -> tuple[Vec, Vec]:
        combo: Vec = {}
        for pk, row, rcombo in self.rows:
            c = vec.get(pk)
            if c is not None:
                vec = _vadd(vec, row, C.mul(c, sp.Integer(-1)))
                combo = _vadd(combo, rcombo, c)
        return vec, combo

    def insert(self, vec: Vec) -> Optional[Vec]:
        """Add ``vec``; returns a dependency combo if it is in the span."""
        idx = self.count
        self.count += 1
        resid, combo = self._reduce(dict(vec))
        combo = _vadd({idx: C.ONE}, combo, sp.Integer(-1))
        if not resid:
            return combo
        keys = sorted(resid, key=_key_order)
        rational = [k for k in keys if C.is_rational(resid[k])]
        pk = rational[0] if rational else keys[0]
        piv = resid[pk]
        if piv.free_symbols:
            self.side_conditions.append(f"{render_coeff(piv)} != 0")
        inv = C.div(C.ONE, piv)
        self.rows.append((pk, _vscale(resid, inv), _vscale(combo, inv)))
        return None

    def express(self, vec: Vec) -> tuple[Vec, Vec]:
        """Return (coordinates over inserted vectors, residual)."""
        resid, combo = self._reduce(dict(vec))
        return combo, resid

    @property
    def rank(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------------------
# coordinates of Lie elements


def coordinates(V: LieElement) -> Vec:
    out: Vec = {}
    for si, lbl in enumerate(V.labels):
        for t in lbl.terms:
            out[(si, t.signature)] = t.coeff
    return out


def from_coordinates(vec: Vec) -> LieElement:
    slots: list[list[Term]] = [[], [], [], []]
    for (si, sig), c in vec.items():
        slots[si].append(Term(c, *sig))
    return LieElement(*(FuncExpr(ts) for ts in slots))


@dataclass
class RankResult:
    rank: int
    dependency: Optional[list]
    side_conditions: list[str]

    def __iter__(self):
        yield self.rank
        yield self.dependency


def rank(elements: Sequence[LieElement]) -> RankResult:
    """Rank over constants plus the first dependency found, if any."""
    red = Reducer()
    dep = None
    for V in elements:
        d = red.insert(coordinates(V))
        if d is not None and dep is None:
            dep = [d.get(i, C.ZERO) for i in range(len(elements))]
    return RankResult(red.rank, dep, list(red.side_conditions))


# ---------------------------------------------------------------------------
# structure constants


@dataclass
class StructureConstants:
    """``c[(i, j)]`` is the coordinate tuple of ``[e_i, e_j]`` for ``i < j``."""

    n: int
    c: dict
    side_conditions: list = field(default_factory=list)
    names: Optional[list] = None

    def __post_init__(self):
        zero = tuple([C.ZERO] * self.n)
        for i in range(self.n):
            for j in range(i + 1, self.n):
                vals = self.c.get((i, j), zero)
                self.c[(i, j)] = tuple(C.to_coeff(v) for v in vals)

    def pair(self, i: int, j: int) -> tuple:
        if i == j:
            return tuple([C.ZERO] * self.n)
        if i < j:
            return self.c[(i, j)]
        return tuple(C.mul(v, sp.Integer(-1)) for v in self.c[(j, i)])

    def bracket_vec(self, a: Sequence, b: Sequence) -> list:
        out = [C.ZERO] * self.n
        for i, ai in enumerate(a):
            if C.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                if i == j or C.is_zero(bj):
                    continue
                s = C.mul(ai, bj)
                for k, ck in enumerate(self.pair(i, j)):
                    if not C.is_zero(ck):
                        out[k] = C.add(out[k], C.mul(s, ck))
        return out

    def basis_vec(self, i: int) -> list:
        v = [C.ZERO] * self.n
        v[i] = C.ONE
        return v

    def ad_matrix(self, a: Sequence) -> sp.Matrix:
        """Matrix of ``x -> [a, x]`` acting on coordinate columns."""
        cols = [self.bracket_vec(a, self.basis_vec(j)) for j in range(self.n)]
        return sp.Matrix(self.n, self.n, lambda r, col: cols[col][r])

    def jacobi_violations(self) -> list:
        bad = []
        for i, j, k in itertools.combinations(range(self.n), 3):
            ei, ej, ek = (self.basis_vec(x) for x in (i, j, k))
            tot = [C.ZERO] * self.n
            for a, b, c in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
                tot = [C.add(x, y) for x, y in zip(tot, self.bracket_vec(self.bracket_vec(a, b), c))]
            if any(not C.is_zero(x) for x in tot):
                bad.append((i, j, k))
        return bad

    def is_abelian(self) -> bool:
        return all(C.is_zero(x) for v in self.c.values() for x in v)

    def subalgebra(self, vectors: Sequence[Sequence]) -> "StructureConstants":
        """Structure constants of the span of ``vectors`` (must be closed)."""
        red = Reducer()
        for vec in vectors:
            if red.insert(_dense_to_sparse(vec)) is not None:
                raise LinearlyDependent([])
        m = len(vectors)
        c = {}
        for i in range(m):
            for j in range(i + 1, m):
                w = self.bracket_vec(vectors[i], vectors[j])
                coords, resid = red.express(_dense_to_sparse(w))
                if resid:
                    raise NotClosed((i, j), LieElement())
                c[(i, j)] = tuple(coords.get(k, C.ZERO) for k in range(m))
        return StructureConstants(m, c)


def _dense_to_sparse(vec: Sequence) -> Vec:
    return {i: v for i, v in enumerate(vec) if not C.is_zero(v)}


@dataclass
class BasisSet:
    elements: Optional[list] = None
    sc: Optional[StructureConstants] = None
    side_conditions: list = field(default_factory=list)

    def __post_init__(self):
        if self.elements is not None:
            r = rank(self.elements)
            if r.rank < len(self.elements):
                raise LinearlyDependent(r.dependency)
            self.side_conditions = r.side_conditions

    @property
    def n(self) -> int:
        return len(self.elements) if self.elements is not None else self.sc.n


def structure_constants(basis, bracket_fn=None) -> StructureConstants:
    """Solve every pairwise bracket in the span of an element basis.

    ``bracket_fn`` replaces the plain bracket, e.g. to bind p and q after
    each bracket.
    """
    bracket_fn = bracket_fn or bracket
    if isinstance(basis, StructureConstants):
        return basis
    if isinstance(basis, BasisSet):
        if basis.elements is None:
            return basis.sc
        elements = basis.elements
    else:
        elements = list(basis)
    red = Reducer()
    for i, V in enumerate(elements):
        if red.insert(coordinates(V)) is not None:
            raise LinearlyDependent(rank(elements).dependency)
    n = len(elements)
    c = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = bracket_fn(elements[i], elements[j])
            coords, resid = red.express(coordinates(w))
            if resid:
                raise NotClosed((i, j), from_coordinates(resid))
            c[(i, j)] = tuple(coords.get(k, C.ZERO) for k in range(n))
    sc = StructureConstants(n, c, side_conditions=list(red.side_conditions))
    bad = sc.jacobi_violations()
    if bad:
        raise JacobiViolation(f"Jacobi identity fails on basis triples {bad}")
    return sc


# ---------------------------------------------------------------------------
# series


def _span(vectors, n: int) -> list[list]:
    """Echelon basis (dense) of the span."""
    red = Reducer()
    basis = []
    for v in vectors:
        if red.insert(_dense_to_sparse(v)) is None:
            basis.append(list(v))
    return basis


def _bracket_span(sc: StructureConstants, A, B) -> list[list]:
    out = []
    for a in A:
        for b in B:
            out.append(sc.bracket_vec(a, b))
    return _span(out, sc.n)


@dataclass
class SeriesResult:
    derived: list
    lower_central: list
    center_dim: int

    def __iter__(self):
        yield self.derived
        yield self.lower_central
        yield self.center_dim

    @property
    def solvable(self) -> bool:
        return self.derived[-1] == 0

    @property
    def nilpotent(self) -> bool:
        return self.lower_central[-1] == 0


def derived_series(sc: StructureConstants) -> list[list[list]]:
    cur = [sc.basis_vec(i) for i in range(sc.n)]
    chain = [cur]
    while cur:
        nxt = _bracket_span(sc, cur, cur)
        if len(nxt) == len(cur):
            break
        chain.append(nxt)
        cur = nxt
    return chain


def lower_central_series(sc: StructureConstants) -> list[list[list]]:
    full = [sc.basis_vec(i) for i in range(sc.n)]
    cur = full
    chain = [cur]
    while cur:
        nxt = _bracket_span(sc, full, cur)
        if len(nxt) == len(cur):
            break
        chain.append(nxt)
        cur = nxt
    return chain


def center_dim(sc: StructureConstants) -> int:
    rows = []
    for i in range(sc.n):
        row = []
        for j in range(sc.n):
            row.extend(sc.pair(i, j))
        rows.append(row)
    return sc.n - len(_span(rows, sc.n))


def series(sc: StructureConstants) -> SeriesResult:
    d = derived_series(sc)
    lc = lower_central_series(sc)
    dd = [len(x) for x in d]
    ld = [len(x) for x in lc]
    # a nonzero tail means the chain stabilised; show the repeat
    if dd[-1]:
        dd.append(dd[-1])
    if ld[-1]:
        ld.append(ld[-1])
    return SeriesResult(dd, ld, center_dim(sc))


def is_ideal(sc: StructureConstants, vectors) -> bool:
    red = Reducer()
    for v in vectors:
        red.insert(_dense_to_sparse(v))
    for i in range(sc.n):
        for v in vectors:
            _, resid = red.express(_dense_to_sparse(sc.bracket_vec(sc.basis_vec(i), v)))
            if resid:
                return False
    return True


def killing_form(sc: StructureConstants) -> sp.Matrix:
    ads = [sc.ad_matrix(sc.basis_vec(i)) for i in range(sc.n)]
    return sp.Matrix(
        sc.n, sc.n, lambda i, j: C.canon((ads[i] * ads[j]).trace())
    )


# ---------------------------------------------------------------------------
# M-matrix classification


@dataclass(frozen=True)
class MClass:
    tag: str  # M1_zero, M2_rank1_diag, M3_nilpotent, M4_diag, M5_complex, M6_jordan
    alpha: Optional[sp.Expr] = None
    notes: tuple = ()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MClass) or self.tag != other.tag:
            return False
        if self.alpha is None or other.alpha is None:
            return self.alpha is None and other.alpha is None
        a, b = self.alpha, other.alpha
        if _same(a, b):
            return True
        # diag(1, a) and diag(1, 1/a) are equivalent by scaling
        return self.tag == "M4_diag" and _same(a * b, C.ONE)

    def __hash__(self) -> int:
        return hash(self.tag)

    def short(self) -> str:
        return self.tag.split("_")[0]

    def __str__(self) -> str:
        if self.alpha is None:
            return self.tag
        return f"{self.tag}(alpha={render_coeff(self.alpha)})"


def _same(a, b) -> bool:
    d = sp.sympify(a - b)
    if d.is_number:
        return abs(complex(sp.N(d, 50))) < 1e-40
    return C.is_zero(C.canon(d))


def _sign(expr) -> Optional[int]:
    expr = C.canon(expr)
    if expr.is_Rational:
        return int(bool(expr > 0)) - int(bool(expr < 0))
    if expr.is_number:
        v = complex(sp.N(expr, 50))
        if abs(v.imag) < 1e-30:
            return (v.real > 0) - (v.real < 0)
    return None


def _exact_sqrt(expr) -> Optional[sp.Expr]:
    """A rational-function square root of ``expr`` if one exists."""
    expr = C.canon(expr)
    if expr.is_Rational:
        if expr < 0:
            return None
        n, d = int(expr.p), int(expr.q)
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return sp.Rational(rn, rd)
        return None
    num, den = sp.fraction(sp.factor(expr))
    root = sp.powdenest(sp.sqrt(num), force=True) / sp.powdenest(sp.sqrt(den), force=True)
    root = C.canon(root)
    if root.has(sp.Pow) and any(
        not a.exp.is_Integer for a in root.atoms(sp.Pow) if a.base.free_symbols
    ):
        return None
    if C.equal(C.mul(root, root), expr):
        return root
    return None


def classify_M(m) -> MClass:
    """Standard form of a 2x2 matrix up to conjugation and nonzero scaling."""
    m = sp.Matrix(m)
    a, b, c, d = (C.to_coeff(m[i, j]) for i in (0, 1) for j in (0, 1))
    tr = C.add(a, d)
    det = C.sub(C.mul(a, d), C.mul(b, c))
    if C.is_zero(det):
        if all(C.is_zero(x) for x in (a, b, c, d)):
            return MClass("M1_zero")
        if C.is_zero(tr):
            return MClass("M3_nilpotent")
        return MClass("M2_rank1_diag")
    disc = C.sub(C.mul(tr, tr), C.mul(sp.Integer(4), det))
    if C.is_zero(disc):
        if C.is_zero(b) and C.is_zero(c) and C.equal(a, d):
            return MClass("M4_diag", C.ONE)
        return MClass("M6_jordan")
    s = _sign(disc)
    root = None
    if s is None:
        root = _exact_sqrt(disc)
        if root is None:
            raise UndecidableSign(f"sign of discriminant {render_coeff(disc)} is undecidable")
        s = 1
    if s > 0:
        if root is None:
            root = sp.sqrt(disc)
        lam1 = C.div(C.add(tr, root), sp.Integer(2))
        lam2 = C.div(C.sub(tr, root), sp.Integer(2))
        alpha = C.div(lam2, lam1)
        sa = _sign(C.sub(C.mul(alpha, alpha), C.ONE))
        if sa is not None and sa > 0:
            alpha = C.div(lam1, lam2)
        if alpha.is_number and not alpha.is_Rational:
            alpha = sp.expand(sp.radsimp(alpha))
        return MClass("M4_diag", alpha)
    j = C.div(C.mul(tr, tr), det)
    alpha2 = C.div(j, C.sub(sp.Integer(4), j))
    r = _exact_sqrt(alpha2)
    alpha = r if r is not None else sp.sqrt(alpha2)
    if _sign(alpha) is not None and _sign(alpha) < 0:
        alpha = -alpha
    return MClass("M5_complex", C.canon(alpha))


def standard_form(mc: MClass) -> sp.Matrix:
    a = mc.alpha
    return {
        "M1_zero": lambda: sp.Matrix([[0, 0], [0, 0]]),
        "M2_rank1_diag": lambda: sp.Matrix([[1, 0], [0, 0]]),
        "M3_nilpotent": lambda: sp.Matrix([[0, 0], [1, 0]]),
        "M4_diag": lambda: sp.Matrix([[1, 0], [0, a]]),
        "M5_complex": lambda: sp.Matrix([[a, 1], [-1, a]]),
        "M6_jordan": lambda: sp.Matrix([[1, 0], [1, 1]]),
    }[mc.tag]()


# ---------------------------------------------------------------------------
# dimension 2 and 3


@dataclass
class Dim2Result:
    abelian: bool
    change_of_basis: Optional[list] = None  # rows: new basis vectors in old coordinates
    side_conditions: list = field(default_factory=list)


def classify_dim2(sc: StructureConstants) -> Dim2Result:
    if sc.n != 2:
        raise ValueError("classify_dim2 needs a 2-dimensional algebra")
    x, y = sc.pair(0, 1)
    if C.is_zero(x) and C.is_zero(y):
        return Dim2Result(True)
    side = []
    if not C.is_zero(y):
        if not C.is_rational(y):
            side.append(f"{render_coeff(y)} != 0")
        basis = [[x, y], [C.div(sp.Integer(-1), y), C.ZERO]]
    else:
        if not C.is_rational(x):
            side.append(f"{render_coeff(x)} != 0")
        basis = [[C.ONE, C.ZERO], [C.ZERO, C.div(C.ONE, x)]]
    return Dim2Result(False, basis, side)


@dataclass
class AlgebraReport:
    dimension: int
    derived: list
    lower_central: list
    center_dim: int
    verdict: str  # abelian | nonabelian2d | solvable | sl2 | unclassified
    m_class: Optional[MClass] = None
    m_matrix: Optional[sp.Matrix] = None
    witnesses: dict = field(default_factory=dict)
    side_conditions: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [
            f"dimension: {self.dimension}",
            f"derived series: {self.derived}",
            f"lower central series: {self.lower_central}",
            f"center dimension: {self.center_dim}",
            f"verdict: {self.verdict}",
        ]
        if self.m_class is not None:
            out.append(f"M class: {self.m_class}")
        if self.m_matrix is not None:
            out.append(f"M matrix: {_fmt_matrix(self.m_matrix)}")
        for k in sorted(self.witnesses):
            out.append(f"{k}: {_fmt_witness(self.witnesses[k])}")
        for s in self.side_conditions:
            out.append(f"side condition: {s}")
        for n in self.notes:
            out.append(f"note: {n}")
        return out


def _fmt_matrix(m) -> str:
    m = sp.Matrix(m)
    rows = ["[" + ", ".join(render_coeff(C.canon(x)) for x in m.row(i)) + "]" for i in range(m.rows)]
    return "[" + ", ".join(rows) + "]"


def _fmt_witness(w) -> str:
    if isinstance(w, (list, tuple)):
        return "[" + ", ".join(_fmt_witness(x) for x in w) + "]"
    if isinstance(w, sp.Basic):
        return render_coeff(w)
    return str(w)


def _nullspace(mat: sp.Matrix) -> list[list]:
    vecs = mat.nullspace(iszerofunc=lambda e: C.is_zero(C.canon(e)), simplify=C.canon)
    return [[C.canon(x) for x in v] for v in vecs]


def _is_rational_square(r) -> Optional[sp.Expr]:
    return _exact_sqrt(r) if C.is_rational(r) and r > 0 else None


def sl2_adapted_basis(sc: StructureConstants, search: int = 2) -> list[list]:
    """Basis (A1, A2, A3) with [A1,A2]=A1, [A1,A3]=2A2, [A2,A3]=A3."""
    cands = list(itertools.product(range(-search, search + 1), repeat=sc.n))
    cands.sort(key=lambda v: (sum(abs(x) for x in v), [-x for x in v]))
    for cv in cands:
        if not any(cv):
            continue
        xv = [sp.Integer(x) for x in cv]
        adx = sc.ad_matrix(xv)
        kxx = C.canon((adx * adx).trace())
        mu = _is_rational_square(C.div(kxx, sp.Integer(2))) if C.is_rational(kxx) else None
        if mu is None:
            continue
        h = [C.div(x, mu) for x in xv]
        adh = sc.ad_matrix(h)
        eye = sp.eye(sc.n)
        neg = _nullspace(adh + eye)
        pos = _nullspace(adh - eye)
        if len(neg) != 1 or len(pos) != 1:
            continue
        a1, a3 = neg[0], pos[0]
        kappa_vec = sc.bracket_vec(a1, a3)
        # [A1, A3] = kappa * A2
        idx = next((i for i, x in enumerate(h) if not C.is_zero(x)), None)
        kappa = C.div(kappa_vec[idx], h[idx])
        if C.is_zero(kappa):
            continue
        a1 = [C.mul(C.div(sp.Integer(2), kappa), x) for x in a1]
        basis = [a1, h, a3]
        if _check_sl2(sc, basis):
            return basis
    raise NoRationalAdaptedBasis("no rational ad-semisimple element with eigenvalues +-1 found")


def _check_sl2(sc, basis) -> bool:
    a1, a2, a3 = basis

    def same(u, v):
        return all(C.equal(x, y) for x, y in zip(u, v))

    return (
        same(sc.bracket_vec(a1, a2), a1)
        and same(sc.bracket_vec(a1, a3), [C.mul(2, x) for x in a2])
        and same(sc.bracket_vec(a2, a3), a3)
    )


def m_matrix_in_basis(sc: StructureConstants, ideal: Sequence[Sequence], third: Sequence) -> sp.Matrix:
    """M with [A1,A3] = a A1 + b A2 and [A2,A3] = c A1 + d A2."""
    red = Reducer()
    for v in ideal:
        red.insert(_dense_to_sparse(v))
    rows = []
    for v in ideal:
        w = sc.bracket_vec(v, third)
        coords, resid = red.express(_dense_to_sparse(w))
        if resid:
            raise IdealSearchFailed("candidate ideal is not invariant")
        rows.append([coords.get(0, C.ZERO), coords.get(1, C.ZERO)])
    return sp.Matrix(rows)


def listed_basis_m(sc: StructureConstants) -> Optional[sp.Matrix]:
    """M in the given basis order if (e1, e2) is an Abelian ideal."""
    if sc.n != 3:
        return None
    e = [sc.basis_vec(i) for i in range(3)]
    if any(not C.is_zero(x) for x in sc.pair(0, 1)):
        return None
    if not is_ideal(sc, e[:2]):
        return None
    return m_matrix_in_basis(sc, e[:2], e[2])


def abelian_ideal(sc: StructureConstants) -> list[list]:
    """A 2-dimensional Abelian ideal of a solvable 3-dimensional algebra."""
    d = derived_series(sc)
    D = d[1] if len(d) > 1 else []
    if len(D) == 2:
        if all(C.is_zero(x) for x in sc.bracket_vec(D[0], D[1])):
            return D
        raise IdealSearchFailed("derived algebra is not Abelian")
    if len(D) == 1:
        cent = _nullspace(sc.ad_matrix(D[0]))
        for z in cent:
            if len(_span([D[0], z], sc.n)) == 2:
                return [D[0], z]
        raise IdealSearchFailed("no centralizer element independent of the derived algebra")
    if len(D) == 0:
        return [sc.basis_vec(0), sc.basis_vec(1)]
    raise IdealSearchFailed("derived algebra has unexpected dimension")


def classify_dim3(sc: StructureConstants) -> AlgebraReport:
    if sc.n != 3:
        raise ValueError("classify_dim3 needs a 3-dimensional algebra")
    ser = series(sc)
    rep = AlgebraReport(3, ser.derived, ser.lower_central, ser.center_dim, "unclassified",
                        side_conditions=list(sc.side_conditions))
    if ser.derived[1] == 3:
        rep.verdict = "sl2"
        try:
            rep.witnesses["adapted_basis"] = sl2_adapted_basis(sc)
        except NoRationalAdaptedBasis as exc:
            rep.notes.append(str(exc))
        return rep
    if sc.is_abelian():
        rep.verdict = "abelian"
        rep.m_class = MClass("M1_zero")
        rep.m_matrix = sp.zeros(2, 2)
        return rep
    try:
        ideal = abelian_ideal(sc)
    except IdealSearchFailed as exc:
        rep.notes.append(str(exc))
        return rep
    red = Reducer()
    for v in ideal:
        red.insert(_dense_to_sparse(v))
    third = next(
        sc.basis_vec(i) for i in range(3)
        if red.express(_dense_to_sparse(sc.basis_vec(i)))[1]
    )
    m = m_matrix_in_basis(sc, ideal, third)
    rep.verdict = "solvable"
    rep.m_matrix = m
    rep.witnesses["ideal_basis"] = ideal
    rep.witnesses["third"] = third
    try:
        rep.m_class = classify_M(m)
    except UndecidableSign as exc:
        rep.notes.append(str(exc))
    return rep


def analyze(sc: StructureConstants) -> AlgebraReport:
    """Series data plus the appropriate low-dimensional classification."""
    if sc.n == 3:
        return classify_dim3(sc)
    ser = series(sc)
    rep = AlgebraReport(sc.n, ser.derived, ser.lower_central, ser.center_dim, "unclassified",
                        side_conditions=list(sc.side_conditions))
    if sc.is_abelian():
        rep.verdict = "abelian"
    elif sc.n == 2:
        d2 = classify_dim2(sc)
        rep.verdict = "nonabelian2d"
        rep.witnesses["change_of_basis"] = d2.change_of_basis
        rep.side_conditions += d2.side_conditions
    elif ser.solvable:
        rep.verdict = "solvable"
    return rep


def element_names(elements: Sequence[LieElement]) -> list[str]:
    return [str(V) for V in elements]


__all__ = [
    "NotClosed", "LinearlyDependent", "UndecidableSign", "NoRationalAdaptedBasis",
    "IdealSearchFailed", "Reducer", "coordinates", "from_coordinates", "rank",
    "StructureConstants", "BasisSet", "structure_constants", "series", "killing_form",
    "MClass", "classify_M", "standard_form", "classify_dim2", "classify_dim3",
    "AlgebraReport", "analyze", "listed_basis_m", "is_ideal", "derived_series",
    "lower_central_series", "center_dim", "sl2_adapted_basis", "SLOTS",
]
