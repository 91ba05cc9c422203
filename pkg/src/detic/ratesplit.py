"""Common/private rate splitting with zero-forcing linear precoders.

Each transmitter ``i`` splits its ``R_i`` symbols into ``R_ic`` common symbols
(decoded by both receivers) and ``R_ip`` private symbols.  In the
coordinates of the interference decompositions the private symbols are
spread over the kernel of the cross channel, so they never reach the other
receiver; the common symbols are spread over the complementary directions.
Receiver 1 then sees

    W12 y1 = M1 [d1c; d1p; d2c]

and decodes by a left inverse whenever ``M1`` has full column rank.  The
fourteen :class:`SplitBounds` are sufficient for that (with high
probability over the random spreading matrices).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .channel import ChannelQuadruple
from .linalg import InterferenceDecomposition, LinAlgError, interference_decomposition, left_inverse, rank
from .matrix import Matrix, block_diag, hstack, random_matrix

DEFAULT_RETRIES = 32


class CodecError(RuntimeError):
    """Random spreading failed to give full-column-rank decode matrices."""

    def __init__(self, message: str, ranks: dict | None = None):
        super().__init__(message)
        self.ranks = ranks or {}


class RateSplit(NamedTuple):
    R1c: int
    R1p: int
    R2c: int
    R2p: int

    @property
    def R1(self) -> int:
        return self.R1c + self.R1p

    @property
    def R2(self) -> int:
        return self.R2c + self.R2p


class MessageVectors(NamedTuple):
    d1: tuple
    d2: tuple


@dataclass(frozen=True)
class SplitBounds:
    """Right-hand sides of the fourteen decodability conditions.

    Receiver 1 (``cp1*``) constrains ``(R1c, R1p, R2c)`` through the seven
    rank conditions on its three column blocks ``A1 = H11' [:, :r21]``,
    ``A2 = H11' [:, r21:]``, ``A3 = [D12; 0]``; ``cp2*`` are the mirror image
    at receiver 2 for ``(R2c, R2p, R1c)``.
    """

    cp11: int
    cp12: int
    cp13: int
    cp14: int
    cp15: int
    cp16: int
    cp17: int
    cp21: int
    cp22: int
    cp23: int
    cp24: int
    cp25: int
    cp26: int
    cp27: int

    def violations(self, s: RateSplit) -> list[str]:
        R1c, R1p, R2c, R2p = s
        checks = {
            "cp11": R1c <= self.cp11,
            "cp12": R1p <= self.cp12,
            "cp13": R2c <= self.cp13,
            "cp14": R1c + R1p <= self.cp14,
            "cp15": R1c + R2c <= self.cp15,
            "cp16": R1p + R2c <= self.cp16,
            "cp17": R1c + R1p + R2c <= self.cp17,
            "cp21": R2c <= self.cp21,
            "cp22": R2p <= self.cp22,
            "cp23": R1c <= self.cp23,
            "cp24": R2c + R2p <= self.cp24,
            "cp25": R2c + R1c <= self.cp25,
            "cp26": R2p + R1c <= self.cp26,
            "cp27": R2c + R2p + R1c <= self.cp27,
        }
        if min(s) < 0:
            return ["negative"]
        return [k for k, ok in checks.items() if not ok]

    def feasible(self, s: RateSplit) -> bool:
        return not self.violations(s)


def _receiver_blocks(H_own: Matrix, rx: InterferenceDecomposition,
                     tx_own: InterferenceDecomposition) -> tuple[Matrix, Matrix, Matrix]:
    """Column blocks seen by one receiver after its change of basis.

    ``rx`` decomposes the interfering matrix arriving at this receiver and
    ``tx_own`` the matrix through which this receiver's transmitter
    interferes with the other receiver.
    """
    Hp = rx.W @ H_own @ tx_own.V_basis
    r = tx_own.rank
    A1 = Hp.col_slice(0, r)
    A2 = Hp.col_slice(r, Hp.ncols)
    A3 = rx.W @ rx.H @ rx.V11
    return A1, A2, A3


def _seven_ranks(A1: Matrix, A2: Matrix, A3: Matrix) -> list[int]:
    return [rank(A1), rank(A2), rank(A3), rank(hstack(A1, A2)), rank(hstack(A1, A3)),
            rank(hstack(A2, A3)), rank(hstack(A1, A2, A3))]


def decompositions(ch: ChannelQuadruple, variant: str = "dual"):
    return interference_decomposition(ch.H12, variant), interference_decomposition(ch.H21, variant)


def split_bounds(ch: ChannelQuadruple, dec12: InterferenceDecomposition | None = None,
                 dec21: InterferenceDecomposition | None = None) -> SplitBounds:
    if dec12 is None or dec21 is None:
        dec12, dec21 = decompositions(ch)
    rx1 = _seven_ranks(*_receiver_blocks(ch.H11, dec12, dec21))
    rx2 = _seven_ranks(*_receiver_blocks(ch.H22, dec21, dec12))
    return SplitBounds(*rx1, *rx2)


def find_split(bounds: SplitBounds, target) -> RateSplit | None:
    """Feasible split of an integer rate pair, or ``None``.

    Scans ``(R1c, R2c)`` lexicographically, so the first hit is the
    lexicographically smallest feasible split.
    """
    R1, R2 = (int(x) for x in target)
    if R1 != target[0] or R2 != target[1] or R1 < 0 or R2 < 0:
        raise ValueError(f"target must be a nonnegative integer pair, got {target}")
    for R1c in range(R1 + 1):
        for R2c in range(R2 + 1):
            s = RateSplit(R1c, R1 - R1c, R2c, R2 - R2c)
            if bounds.feasible(s):
                return s
    return None


@dataclass(frozen=True)
class Codec:
    channel: ChannelQuadruple
    split: RateSplit
    E1c: Matrix
    E1p: Matrix
    E2c: Matrix
    E2p: Matrix
    M1: Matrix
    M2: Matrix
    M1_left_inv: Matrix
    M2_left_inv: Matrix
    dec12: InterferenceDecomposition
    dec21: InterferenceDecomposition
    seed: int | None
    attempts: int

    @property
    def P1(self) -> Matrix:
        """Full precoder of transmitter 1: ``x1 = P1 d1``."""
        return self.dec21.V_basis @ block_diag(self.E1c, self.E1p)

    @property
    def P2(self) -> Matrix:
        return self.dec12.V_basis @ block_diag(self.E2c, self.E2p)

    def encode(self, d1: Sequence, d2: Sequence) -> tuple[tuple, tuple]:
        s = self.split
        if len(d1) != s.R1 or len(d2) != s.R2:
            raise ValueError(f"message lengths ({len(d1)}, {len(d2)}) do not match "
                             f"rates ({s.R1}, {s.R2})")
        return self.P1.apply(d1), self.P2.apply(d2)

    def decode_t1(self, y1: Sequence) -> tuple[tuple, tuple, tuple]:
        d = self.M1_left_inv.apply(self.dec12.W.apply(y1))
        s = self.split
        return d[:s.R1c], d[s.R1c:s.R1], d[s.R1:]

    def decode_t2(self, y2: Sequence) -> tuple[tuple, tuple, tuple]:
        d = self.M2_left_inv.apply(self.dec21.W.apply(y2))
        s = self.split
        return d[:s.R2c], d[s.R2c:s.R2], d[s.R2:]

    def round_trip(self, d1: Sequence, d2: Sequence) -> bool:
        """Encode, send through the channel and check both receivers."""
        x1, x2 = self.encode(d1, d2)
        y1, y2 = self.channel.transmit(x1, x2)
        d1c, d1p, _ = self.decode_t1(y1)
        d2c, d2p, _ = self.decode_t2(y2)
        F = self.channel.field
        return (d1c + d1p == tuple(F(x) for x in d1)
                and d2c + d2p == tuple(F(x) for x in d2))


def _assemble(ch, dec12, dec21, E1c, E1p, E2c, E2p):
    A1, A2, A3 = _receiver_blocks(ch.H11, dec12, dec21)
    M1 = hstack(A1 @ E1c, A2 @ E1p, A3 @ E2c)
    B1, B2, B3 = _receiver_blocks(ch.H22, dec21, dec12)
    M2 = hstack(B1 @ E2c, B2 @ E2p, B3 @ E1c)
    return M1, M2


def build_codec(ch: ChannelQuadruple, split: RateSplit, seed: int = 0,
                retry_budget: int = DEFAULT_RETRIES, *,
                spreading: dict | None = None,
                decomps: tuple[InterferenceDecomposition, InterferenceDecomposition] | None = None,
                ) -> Codec:
    """Draw spreading matrices until both decode matrices have full column rank.

    ``spreading`` injects fixed ``E1c, E1p, E2c, E2p`` (missing keys mean
    empty blocks of the right shape) and disables redraws; ``decomps``
    injects the pair ``(dec12, dec21)``.
    """
    dec12, dec21 = decomps if decomps is not None else decompositions(ch)
    F = ch.field
    split = RateSplit(*split)
    r12, r21 = dec12.rank, dec21.rank
    shapes = {
        "E1c": (r21, split.R1c),
        "E1p": (ch.m1 - r21, split.R1p),
        "E2c": (r12, split.R2c),
        "E2p": (ch.m2 - r12, split.R2p),
    }
    bounds = split_bounds(ch, dec12, dec21)
    bad = bounds.violations(split)
    if bad:
        raise ValueError(f"split {tuple(split)} violates {', '.join(bad)}")

    if spreading is not None:
        draws = [{k: spreading.get(k, Matrix.zeros(F, *shape)) for k, shape in shapes.items()}]
        for k, shape in shapes.items():
            if draws[0][k].shape != shape:
                raise ValueError(f"{k} must be {shape}, got {draws[0][k].shape}")
    else:
        def draws_gen():
            for attempt in range(retry_budget):
                rng = np.random.default_rng([seed, attempt])
                yield {k: random_matrix(F, *shape, rng) for k, shape in shapes.items()}
        draws = draws_gen()

    last = {}
    for attempt, E in enumerate(draws, start=1):
        M1, M2 = _assemble(ch, dec12, dec21, E["E1c"], E["E1p"], E["E2c"], E["E2p"])
        k1, k2 = rank(M1), rank(M2)
        last = {"M1": (k1, M1.ncols), "M2": (k2, M2.ncols)}
        if k1 == M1.ncols and k2 == M2.ncols:
            return Codec(ch, split, E["E1c"], E["E1p"], E["E2c"], E["E2p"], M1, M2,
                         left_inverse(M1), left_inverse(M2), dec12, dec21,
                         None if spreading is not None else seed, attempt)
    raise CodecError(f"no full-rank draw in {retry_budget if spreading is None else 1} "
                     f"attempt(s); last ranks {last}", last)
