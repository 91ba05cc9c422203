"""Exact linear algebra over the rationals and prime fields.

Prime fields use plain modular Gauss-Jordan elimination.  Rational matrices
are first cleared of denominators row by row and then eliminated
fraction-free (Bareiss), so intermediate integers stay bounded by minors of
the input; only the final normalisation to reduced echelon form uses
:class:`~fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .field import Field
from .matrix import Matrix, ShapeError, hstack, vstack


class LinAlgError(ValueError):
    pass


def _rref_mod(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    a = [list(r) for r in rows]
    m = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        prow = [x * inv % p for x in a[r]]
        a[r] = prow
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                row = a[i]
                a[i] = [(x - f * y) % p for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return a, pivots


def _echelon_bareiss(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix."""
    a = [list(r) for r in rows]
    m = len(a)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pc = pr[c]
        for i in range(r + 1, m):
            row = a[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (pc * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = pc
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_rational(rows, ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    ints = []
    for row in rows:
        den = lcm(1, *(x.denominator for x in row))
        ints.append([int(x * den) for x in row])
    ech, pivots = _echelon_bareiss(ints, ncols)
    rank = len(pivots)
    out = [[Fraction(x) for x in ech[k]] for k in range(rank)]
    for k in range(rank - 1, -1, -1):
        c = pivots[k]
        pv = out[k][c]
        out[k] = [x / pv for x in out[k]]
        for i in range(k):
            f = out[i][c]
            if f:
                out[i] = [x - f * y for x, y in zip(out[i], out[k])]
    out.extend([Fraction(0)] * ncols for _ in range(len(rows) - rank))
    return out, pivots


def rank_rref(M: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row echelon form, pivot columns and rank of ``M``."""
    if M.nrows == 0 or M.ncols == 0:
        return M, [], 0
    if M.field.p is None:
        data, pivots = _rref_rational(M.rows, M.ncols)
    else:
        data, pivots = _rref_mod(M.rows, M.ncols, M.field.p)
    return Matrix._raw(M.field, M.nrows, M.ncols, data), pivots, len(pivots)


def rank(M: Matrix) -> int:
    return rank_rref(M)[2]


def null_space_basis(M: Matrix) -> Matrix:
    """Columns form a basis of the right kernel ``{x : Mx = 0}``."""
    F = M.field
    R, pivots, r = rank_rref(M)
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    cols = []
    for f in free:
        v = [F.zero] * M.ncols
        v[f] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F(-R.rows[i][f])
        cols.append(v)
    return Matrix.from_columns(F, cols, M.ncols)


def left_null_space_basis(M: Matrix) -> Matrix:
    """Columns span ``{u : u^T M = 0}``."""
    return null_space_basis(M.T)


def column_space_basis(M: Matrix) -> Matrix:
    """The pivot columns of ``M``."""
    _, pivots, _ = rank_rref(M)
    return M.take_cols(pivots)


def extend_to_basis(B: Matrix, ambient: int | None = None) -> Matrix:
    """Standard unit vectors completing the columns of ``B`` to a basis.

    Candidates are scanned in lexicographic order of their coordinate tuples,
    ``e_{n-1} = (0, ..., 0, 1)`` first, and kept when they enlarge the span.
    The chosen vectors are returned in increasing index order.
    """
    n = B.nrows if ambient is None else ambient
    if B.nrows != n:
        raise ShapeError(f"basis lives in F^{B.nrows}, ambient is {n}")
    F = B.field
    if rank(B) != B.ncols:
        raise LinAlgError("not a basis: columns are dependent")
    span = _SpanTracker(F, n)
    for c in B.columns():
        span.add(c)
    chosen = []
    for i in range(n - 1, -1, -1):
        if span.size == n:
            break
        e = [F.zero] * n
        e[i] = F.one
        if span.add(e):
            chosen.append(i)
    chosen.sort()
    return Matrix.from_columns(F, [[F.one if k == i else F.zero for k in range(n)] for i in chosen], n)


class _SpanTracker:
    """Incremental echelon basis; ``add`` reports whether the span grew."""

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self.basis: dict[int, list] = {}

    @property
    def size(self):
        return len(self.basis)

    def add(self, vec) -> bool:
        F = self.field
        p = F.p
        v = [F(x) for x in vec]
        for c, b in self.basis.items():
            f = v[c]
            if f:
                v = [(x - f * y) % p if p is not None else x - f * y for x, y in zip(v, b)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            return False
        inv = F.inv(v[lead])
        v = [x * inv % p if p is not None else x * inv for x in v]
        for c, b in self.basis.items():
            f = b[lead]
            if f:
                self.basis[c] = [(x - f * y) % p if p is not None else x - f * y
                                 for x, y in zip(b, v)]
        self.basis[lead] = v
        return True


def inverse(S: Matrix) -> Matrix:
    if S.nrows != S.ncols:
        raise ShapeError(f"cannot invert a {S.shape} matrix")
    n = S.nrows
    if n == 0:
        return S
    R, pivots, r = rank_rref(hstack(S, Matrix.identity(S.field, n)))
    if r < n or pivots[n - 1] != n - 1:
        raise LinAlgError("matrix is singular")
    return R.col_slice(n, 2 * n)


def left_inverse(M: Matrix) -> Matrix:
    """A matrix ``L`` with ``L @ M == I``; built from a maximal set of
    independent rows of ``M``."""
    k = M.ncols
    if rank(M) != k:
        raise LinAlgError("no left inverse: matrix is not of full column rank")
    _, prows, _ = rank_rref(M.T)
    Sinv = inverse(M.take_rows(prows))
    F = M.field
    data = [[F.zero] * M.nrows for _ in range(k)]
    for t, i in enumerate(prows):
        for row in range(k):
            data[row][i] = Sinv.rows[row][t]
    return Matrix._raw(F, k, M.nrows, data)


def subspace_intersection_dim(A: Matrix, B: Matrix) -> int:
    """``dim(span A ∩ span B)`` for column bases ``A`` and ``B``.

    Pairs ``(x, y)`` with ``Ax = By`` form the kernel of ``[A  -B]``; with
    independent columns that kernel is isomorphic to the intersection.
    """
    if A.nrows != B.nrows:
        raise ShapeError(f"ambient dimensions differ: {A.nrows} vs {B.nrows}")
    if A.ncols + B.ncols == 0:
        return 0
    return null_space_basis(hstack(A, -B)).ncols


def gaussian_binomial(l: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^l."""
    if k < 0 or l < 0:
        raise ValueError("dimensions must be nonnegative")
    if k > l:
        raise ValueError(f"k={k} exceeds l={l}")
    if q < 2:
        raise ValueError("q must be at least 2")
    num = den = 1
    for i in range(k):
        num *= q ** (l - i) - 1
        den *= q ** (k - i) - 1
    return num // den


@dataclass(frozen=True)
class InterferenceDecomposition:
    """Invertible transforms block-diagonalising a cross-channel matrix.

    ``W @ H @ V_basis == [[D, 0], [0, 0]]`` with ``D`` an invertible
    ``rank x rank`` block.  The first ``rank`` columns of ``U_basis`` span the
    column space of ``H``; the last ``ncols - rank`` columns of ``V_basis``
    span its kernel.  ``W`` is the receiver-side transform: the inverse of
    ``U_basis`` for the dual-basis variant, its transpose for the
    transpose variant.
    """

    H: Matrix
    rank: int
    U_basis: Matrix
    W: Matrix
    V_basis: Matrix
    D: Matrix
    variant: str = "dual"

    @property
    def U11(self) -> Matrix:
        return self.U_basis.col_slice(0, self.rank)

    @property
    def U10(self) -> Matrix:
        return self.U_basis.col_slice(self.rank, self.U_basis.ncols)

    @property
    def V11(self) -> Matrix:
        return self.V_basis.col_slice(0, self.rank)

    @property
    def V10(self) -> Matrix:
        return self.V_basis.col_slice(self.rank, self.V_basis.ncols)

    @property
    def W_top(self) -> Matrix:
        return self.W.row_slice(0, self.rank)

    @property
    def W_bot(self) -> Matrix:
        return self.W.row_slice(self.rank, self.W.nrows)

    def block_form(self) -> Matrix:
        return self.W @ self.H @ self.V_basis

    def check(self) -> None:
        """Raise :class:`LinAlgError` unless every structural invariant holds."""
        H, r, F = self.H, self.rank, self.H.field
        n, m = H.shape
        expected = Matrix.zeros(F, n, m)
        if r:
            rows = [list(self.D.rows[i]) + [F.zero] * (m - r) for i in range(r)]
            rows += [[F.zero] * m for _ in range(n - r)]
            expected = Matrix._raw(F, n, m, rows)
        if self.block_form() != expected:
            raise LinAlgError("W H V is not [[D, 0], [0, 0]]")
        if not (H @ self.V10).is_zero():
            raise LinAlgError("V10 is not in the kernel of H")
        if not (self.W_bot @ H).is_zero():
            raise LinAlgError("W_bot H is nonzero")
        if rank(self.D) != r or rank(self.U_basis) != n or rank(self.V_basis) != m:
            raise LinAlgError("a transform is singular")
        if rank(hstack(self.U11, H)) != r:
            raise LinAlgError("U11 does not span the column space of H")
        if self.variant == "dual" and self.W @ self.U_basis != Matrix.identity(F, n):
            raise LinAlgError("W is not the inverse of U_basis")

    @classmethod
    def from_bases(cls, H: Matrix, U11: Matrix, U10: Matrix, V11: Matrix,
                   V10: Matrix) -> InterferenceDecomposition:
        """Transpose-variant decomposition from explicitly chosen bases.

        ``W = [U11^T; U10^T]`` and ``D = U11^T H V11``; raises when either
        ``W`` or ``D`` is singular over the field.
        """
        r = U11.ncols
        U = hstack(U11, U10)
        V = hstack(V11, V10)
        W = vstack(U11.T, U10.T)
        D = U11.T @ H @ V11
        if rank(D) != r:
            raise LinAlgError("transpose construction failed: D is singular")
        if rank(W) != W.nrows:
            raise LinAlgError("transpose construction failed: U^T is singular")
        return cls(H=H, rank=r, U_basis=U, W=W, V_basis=V, D=D, variant="transpose")


def interference_decomposition(H: Matrix, variant: str = "dual") -> InterferenceDecomposition:
    """Block-diagonalise ``H`` with invertible row and column transforms.

    ``variant="dual"`` (default) takes ``V10`` as a kernel basis, completes it
    with unit vectors to ``V_basis``, sets ``U11 = H V11``, completes that to
    ``U_basis`` and uses ``W = U_basis^{-1}``; then ``D`` is the identity.
    This works over every field.

    ``variant="transpose"`` follows the orthogonal-complement recipe: ``U11``
    spans the column space, ``U10`` the left kernel, ``V11`` the row space
    and ``W = U_basis^T``.  Over a finite field the column space can meet the
    left kernel, making ``D`` singular; that raises :class:`LinAlgError`.
    """
    if variant == "transpose":
        return InterferenceDecomposition.from_bases(
            H, column_space_basis(H), null_space_basis(H.T),
            column_space_basis(H.T), null_space_basis(H))
    if variant != "dual":
        raise ValueError(f"unknown variant {variant!r}")
    m = H.ncols
    V10 = null_space_basis(H)
    r = m - V10.ncols
    V11 = extend_to_basis(V10)
    U11 = H @ V11
    U = hstack(U11, extend_to_basis(U11))
    W = inverse(U)
    D = W.row_slice(0, r) @ H @ V11
    return InterferenceDecomposition(H=H, rank=r, U_basis=U, W=W,
                                     V_basis=hstack(V11, V10), D=D)
