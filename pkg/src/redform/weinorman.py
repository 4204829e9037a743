"""Wei-Norman decomposition and Lie-bracket closure of constant matrix spans."""

from __future__ import annotations

from dataclasses import dataclass, field

from .field import GaussRational, UniPoly, RatFunc, QI_RING, GR_ZERO
from .linalg import Mat, rref
from .diffsys import LinearDiffSystem

__all__ = ["WeiNormanDecomposition", "MatrixLieSpan", "decompose",
           "bracket_closure", "span_member"]


@dataclass(frozen=True)
class WeiNormanDecomposition:
    coeffs: tuple   # f_1..f_r in k, linearly independent over constants
    mats: tuple     # constant matrices M_1..M_r with A = sum f_i M_i

    @property
    def rank(self):
        return len(self.coeffs)

    def reconstruct(self, ring) -> Mat:
        n = self.mats[0].rows if self.mats else 0
        acc = Mat.zeros(ring, n, n)
        for f, M in zip(self.coeffs, self.mats):
            acc = acc + M.map(lambda c: RatFunc.const(c) * f, ring)
        return acc


@dataclass(frozen=True)
class MatrixLieSpan:
    basis: tuple
    closed: bool = False

    @property
    def dim(self):
        return len(self.basis)


def _entry_coeff_vector(f: RatFunc, common_den: UniPoly, width: int):
    """Coefficient vector over Q(i) of f * common_den (a polynomial)."""
    num = (f * RatFunc(common_den)).num
    cs = list(num.coeffs) + [GR_ZERO] * (width - len(num.coeffs))
    return cs


def decompose(sys: LinearDiffSystem) -> WeiNormanDecomposition:
    """Greedy Wei-Norman decomposition in row-major entry reading order.

    Basis functions are the first entries (over a common denominator) that are
    linearly independent over constants; A = sum f_i M_i exactly.
    """
    A = sys.matrix
    n = A.rows
    common = UniPoly([1])
    for row in A.entries:
        for e in row:
            common = common.lcm(e.den)
    width = max((e.num.degree + common.degree + 1 for row in A.entries
                 for e in row if not e.is_zero()), default=1)

    basis_funcs = []
    basis_vecs = []
    entry_vecs = {}
    for i in range(n):
        for j in range(n):
            e = A.entries[i][j]
            if e.is_zero():
                continue
            v = _entry_coeff_vector(e, common, width)
            entry_vecs[(i, j)] = v
            stacked = Mat(QI_RING, basis_vecs + [v])
            _, pivots = rref(stacked)
            if len(pivots) > len(basis_vecs):
                basis_vecs.append(v)
                basis_funcs.append(e)

    r = len(basis_funcs)
    if r == 0:
        return WeiNormanDecomposition((), ())

    # coordinates of each entry in the chosen function basis
    basis_mat = Mat(QI_RING, basis_vecs).transpose()
    solver = _LinearSolver(basis_mat)
    mats = [Mat.zeros(QI_RING, n, n).entries for _ in range(r)]
    for (i, j), v in entry_vecs.items():
        coords = solver.solve(v)
        for k, c in enumerate(coords):
            mats[k][i][j] = c
    return WeiNormanDecomposition(tuple(basis_funcs),
                                  tuple(Mat(QI_RING, m) for m in mats))


class _LinearSolver:
    """Solves M x = b repeatedly for a fixed full-column-rank M over Q(i)."""

    def __init__(self, M: Mat):
        self.M = M
        aug = Mat(QI_RING, [row + ident_row
                            for row, ident_row in zip(
                                M.entries,
                                Mat.identity(QI_RING, M.rows).entries)])
        red, pivots = rref(aug)
        self.red = red
        self.pivots = pivots
        self.ncols = M.cols

    def solve(self, b):
        n = self.ncols
        x = [GR_ZERO] * n
        for prow, pcol in enumerate(self.pivots):
            if pcol >= n:
                break
            acc = GR_ZERO
            for j, bj in enumerate(b):
                acc = acc + self.red.entries[prow][n + j] * bj
            x[pcol] = acc
        # consistency check (b must lie in the column space)
        from .linalg import mat_vec
        if mat_vec(self.M, x) != list(b):
            raise ValueError("inconsistent linear system in decomposition")
        return x


def _flatten(M: Mat):
    return [c for row in M.entries for c in row]


def bracket_closure(gens) -> MatrixLieSpan:
    """Span of the generators closed under [X,Y] = XY - YX."""
    gens = list(gens)
    if not gens:
        return MatrixLieSpan((), True)
    n = gens[0].rows
    basis = []
    vecs = []

    def try_add(M):
        v = _flatten(M)
        stacked = Mat(QI_RING, vecs + [v])
        _, pivots = rref(stacked)
        if len(pivots) > len(vecs):
            vecs.append(v)
            basis.append(M)
            return True
        return False

    for g in gens:
        try_add(g)
    frontier = list(basis)
    while frontier:
        new = []
        for X in frontier:
            for Y in basis:
                B = X * Y - Y * X
                if try_add(B):
                    new.append(B)
        frontier = new
    return MatrixLieSpan(tuple(basis), True)


def span_member(span: MatrixLieSpan, M: Mat) -> bool:
    """Whether M is a constant-linear combination of the span basis."""
    vecs = [_flatten(B) for B in span.basis]
    v = _flatten(M)
    if all(c == GR_ZERO for c in v):
        return True
    _, pivots_without = rref(Mat(QI_RING, vecs)) if vecs else (None, [])
    _, pivots_with = rref(Mat(QI_RING, vecs + [v]))
    return len(pivots_with) == len(pivots_without)
