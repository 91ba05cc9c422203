"""Two-user MIMO linear deterministic interference channel.

    y1 = H11 x1 + H12 x2
    y2 = H21 x1 + H22 x2

Receiver ``i`` wants ``x_i``; ``H12`` and ``H21`` carry interference.  The
capacity region is a function of a handful of ranks collected in
:class:`RankProfile`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import Field
from .linalg import interference_decomposition, rank, rank_rref, InterferenceDecomposition
from .matrix import Matrix, ShapeError, block, hstack, vstack
from .region import RateRegion


@dataclass(frozen=True)
class ChannelQuadruple:
    H11: Matrix
    H12: Matrix
    H21: Matrix
    H22: Matrix

    def __post_init__(self):
        F = self.H11.field
        if any(h.field != F for h in (self.H12, self.H21, self.H22)):
            raise ValueError("all four matrices must share one field")
        n1, m1 = self.H11.shape
        n2, m2 = self.H22.shape
        if self.H12.shape != (n1, m2) or self.H21.shape != (n2, m1):
            raise ShapeError(
                f"inconsistent shapes: H11 {self.H11.shape}, H12 {self.H12.shape}, "
                f"H21 {self.H21.shape}, H22 {self.H22.shape}")

    @classmethod
    def from_lists(cls, field: Field, H11, H12, H21, H22, *, m1=None, m2=None,
                   n1=None, n2=None) -> ChannelQuadruple:
        """Build from nested lists; explicit dimensions are needed only when a
        block is empty."""
        def dims(rows, nr, nc):
            nr = len(rows) if nr is None else nr
            nc = (len(rows[0]) if rows else 0) if nc is None else nc
            return nr, nc

        n1_, m1_ = dims(H11, n1, m1)
        n2_, m2_ = dims(H22, n2, m2)
        n1_ = n1_ if n1 is not None else len(H12)
        return cls(Matrix(field, H11, n1_, m1_), Matrix(field, H12, n1_, m2_),
                   Matrix(field, H21, n2_, m1_), Matrix(field, H22, n2_, m2_))

    @property
    def field(self) -> Field:
        return self.H11.field

    @property
    def m1(self) -> int:
        return self.H11.ncols

    @property
    def m2(self) -> int:
        return self.H22.ncols

    @property
    def n1(self) -> int:
        return self.H11.nrows

    @property
    def n2(self) -> int:
        return self.H22.nrows

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return (self.m1, self.m2, self.n1, self.n2)

    def swapped(self) -> ChannelQuadruple:
        """Relabel the users."""
        return ChannelQuadruple(self.H22, self.H21, self.H12, self.H11)

    def is_reduced(self) -> bool:
        return (rank(hstack(self.H11, self.H12)) == self.n1
                and rank(hstack(self.H21, self.H22)) == self.n2
                and rank(vstack(self.H11, self.H21)) == self.m1
                and rank(vstack(self.H12, self.H22)) == self.m2)

    def transmit(self, x1, x2) -> tuple[tuple, tuple]:
        """Channel outputs ``(y1, y2)`` for inputs ``x1``, ``x2``."""
        F = self.field
        p = F.p
        def add(u, v):
            return tuple((a + b) % p if p is not None else a + b for a, b in zip(u, v))
        y1 = add(self.H11.apply(x1), self.H12.apply(x2))
        y2 = add(self.H21.apply(x1), self.H22.apply(x2))
        return y1, y2


@dataclass(frozen=True)
class Reduction:
    """Rows of ``y1``, ``y2`` and columns of ``x1``, ``x2`` that were kept."""

    rows1: tuple[int, ...]
    rows2: tuple[int, ...]
    cols1: tuple[int, ...]
    cols2: tuple[int, ...]


def reduce_channel(ch: ChannelQuadruple) -> tuple[ChannelQuadruple, Reduction]:
    """Drop dependent output rows and input columns.

    Kept rows of each receiver are the first independent rows of
    ``[H_i1 H_i2]``; kept columns of each transmitter are the pivot columns
    of ``[H_1j; H_2j]``.  Dropping dependent rows leaves the column ranks
    untouched and vice versa, so one pass suffices.
    """
    def pivot_rows(M):
        return tuple(rank_rref(M.T)[1])

    def pivot_cols(M):
        return tuple(rank_rref(M)[1])

    rows1 = pivot_rows(hstack(ch.H11, ch.H12))
    rows2 = pivot_rows(hstack(ch.H21, ch.H22))
    cols1 = pivot_cols(vstack(ch.H11, ch.H21))
    cols2 = pivot_cols(vstack(ch.H12, ch.H22))
    red = ChannelQuadruple(
        ch.H11.take_rows(rows1).take_cols(cols1),
        ch.H12.take_rows(rows1).take_cols(cols2),
        ch.H21.take_rows(rows2).take_cols(cols1),
        ch.H22.take_rows(rows2).take_cols(cols2),
    )
    return red, Reduction(rows1, rows2, cols1, cols2)


def cross_matrices(ch: ChannelQuadruple) -> tuple[Matrix, Matrix]:
    """``[[H11, H12], [H21, 0]]`` and ``[[H21, H22], [0, H12]]``."""
    F = ch.field
    c1 = block([[ch.H11, ch.H12], [ch.H21, Matrix.zeros(F, ch.n2, ch.m2)]])
    c2 = block([[ch.H21, ch.H22], [Matrix.zeros(F, ch.n1, ch.m1), ch.H12]])
    return c1, c2


@dataclass(frozen=True)
class RankProfile:
    r11: int
    r12: int
    r21: int
    r22: int
    cross1: int
    cross2: int
    a: int
    b: int
    dec12: InterferenceDecomposition = dc_field(repr=False, compare=False)
    dec21: InterferenceDecomposition = dc_field(repr=False, compare=False)


def rank_profile(ch: ChannelQuadruple) -> RankProfile:
    """All rank quantities entering the capacity region.

    ``a`` is the rank of the part of ``H11`` that is seen by receiver 1
    outside the interference subspace and that is invisible to receiver 2;
    ``b`` is the mirror quantity for ``H22``.  The two block ranks must
    decompose as ``a + r21 + r12`` and ``b + r21 + r12``.
    """
    dec12 = interference_decomposition(ch.H12)
    dec21 = interference_decomposition(ch.H21)
    a = rank(dec12.W_bot @ ch.H11 @ dec21.V10)
    b = rank(dec21.W_bot @ ch.H22 @ dec12.V10)
    c1, c2 = cross_matrices(ch)
    cross1, cross2 = rank(c1), rank(c2)
    r12, r21 = dec12.rank, dec21.rank
    if cross1 != a + r21 + r12 or cross2 != b + r21 + r12:
        raise RuntimeError(
            f"block-rank identity violated: cross=({cross1},{cross2}), "
            f"a={a}, b={b}, r12={r12}, r21={r21}")
    return RankProfile(rank(ch.H11), r12, r21, rank(ch.H22), cross1, cross2, a, b,
                       dec12, dec21)


def rank_inequalities(ch: ChannelQuadruple, prof: RankProfile) -> list[tuple[int, int, int]]:
    n1, n2, m1, m2 = ch.n1, ch.n2, ch.m1, ch.m2
    r12, r21 = prof.r12, prof.r21
    return [
        (1, 0, prof.r11),
        (0, 1, prof.r22),
        (1, 1, n1 + m2 - r12),
        (1, 1, n2 + m1 - r21),
        (1, 1, prof.cross1 + prof.cross2 - r21 - r12),
        (2, 1, n1 + m1 + prof.cross2 - r21 - r12),
        (1, 2, n2 + m2 + prof.cross1 - r21 - r12),
    ]


def reduced_inequalities(ch: ChannelQuadruple, prof: RankProfile) -> list[tuple[int, int, int]]:
    n1, n2, m1, m2 = ch.n1, ch.n2, ch.m1, ch.m2
    r12, r21 = prof.r12, prof.r21
    return [
        (1, 0, prof.r11),
        (0, 1, prof.r22),
        (1, 1, n1 + m2 - r12),
        (1, 1, n2 + m1 - r21),
        (1, 1, prof.a + prof.b + r21 + r12),
        (2, 1, n1 + m1 + prof.b),
        (1, 2, n2 + m2 + prof.a),
    ]


def capacity_region(ch: ChannelQuadruple, form: str = "ranks", *,
                    minimal: bool = True) -> RateRegion:
    """Capacity region of the channel.

    The channel is reduced first (a no-op when it already is).
    ``form="ranks"`` instantiates the seven bounds from block ranks,
    ``form="reduced"`` from the decomposition ranks ``a`` and ``b``; both
    describe the same polygon.
    """
    ch, _ = reduce_channel(ch)
    prof = rank_profile(ch)
    if form == "ranks":
        ineqs = rank_inequalities(ch, prof)
    elif form == "reduced":
        ineqs = reduced_inequalities(ch, prof)
    else:
        raise ValueError(f"unknown form {form!r}")
    reg = RateRegion(tuple(ineqs))
    return reg.minimal() if minimal else reg
