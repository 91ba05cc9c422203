"""Brute-force and Monte Carlo checks of the rank and entropy facts the
region and the coding scheme rest on.

Each check avoids the code path it is checking: block ranks here come from
a plain Gauss-Jordan routine (numpy for prime fields, Fraction rows for the
rationals) rather than from :mod:`detic.linalg`, entropies come from
counting, and subspace counts from explicit enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .channel import ChannelQuadruple, capacity_region, reduce_channel
from .field import Field
from .linalg import (column_space_basis, gaussian_binomial, interference_decomposition,
                     null_space_basis, rank, subspace_intersection_dim)
from .matrix import Matrix, hstack, random_matrix, vstack
from .ratesplit import CodecError, build_codec, find_split, split_bounds

MAX_ENUMERATION = 2 ** 16


def independent_rank(M: Matrix) -> int:
    """Rank by textbook Gauss-Jordan, sharing no code with :mod:`detic.linalg`."""
    if M.nrows == 0 or M.ncols == 0:
        return 0
    p = M.field.p
    if p is None:
        rows = [list(r) for r in M.rows]
        r = 0
        for c in range(M.ncols):
            piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for i in range(len(rows)):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c] / rows[r][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            r += 1
        return r
    dtype = np.int64 if p < 2 ** 31 else object
    A = np.array(M.rows, dtype=dtype) % p
    r = 0
    for c in range(A.shape[1]):
        nz = np.nonzero(A[r:, c] % p)[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - np.outer(f, A[r])) % p
        r += 1
        if r == A.shape[0]:
            break
    return r


def wilson_interval(successes: int, trials: int, z: float = 1.959964) -> tuple[float, float]:
    if trials == 0:
        return (0.0, 1.0)
    ph = successes / trials
    den = 1 + z * z / trials
    mid = (ph + z * z / (2 * trials)) / den
    half = z * math.sqrt(ph * (1 - ph) / trials + z * z / (4 * trials * trials)) / den
    return (max(0.0, mid - half), min(1.0, mid + half))


@dataclass(frozen=True)
class TrialReport:
    trials: int
    successes: int
    q: int
    params: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.successes <= self.trials:
            raise ValueError("successes must lie in [0, trials]")

    @property
    def rate(self) -> Fraction:
        return Fraction(self.successes, self.trials) if self.trials else Fraction(1)

    @property
    def failure_rate(self) -> Fraction:
        return 1 - self.rate

    @property
    def fitted_K(self) -> float:
        """Constant ``K`` in ``failure ~ K / q`` implied by this run."""
        return float(self.failure_rate) * self.q

    def wilson(self, z: float = 1.959964) -> tuple[float, float]:
        return wilson_interval(self.successes, self.trials, z)


def _random_rank_matrix(F: Field, nrows: int, ncols: int, r: int, rng) -> Matrix:
    if r == 0 or nrows == 0 or ncols == 0:
        return Matrix.zeros(F, nrows, ncols)
    return random_matrix(F, nrows, r, rng) @ random_matrix(F, r, ncols, rng)


def concat_conditions(mats, ks) -> list[bool]:
    """The seven rank conditions under which random spreading keeps
    ``[A1 E1, A2 E2, A3 E3]`` at full column rank."""
    A1, A2, A3 = mats
    k1, k2, k3 = ks
    return [k1 <= rank(A1), k2 <= rank(A2), k3 <= rank(A3),
            k1 + k2 <= rank(hstack(A1, A2)), k1 + k3 <= rank(hstack(A1, A3)),
            k2 + k3 <= rank(hstack(A2, A3)), k1 + k2 + k3 <= rank(hstack(A1, A2, A3))]


def concat_instance(q: int):
    """A small instance meeting all seven conditions with equality where it
    matters: three independent ways to fail, each with probability ``1/q``."""
    F = Field(q)
    A1 = Matrix(F, [[1, 2], [0, 0], [0, 0]])
    A2 = Matrix(F, [[0, 0], [1, 1], [0, 0]])
    A3 = Matrix.identity(F, 3)
    return (A1, A2, A3), (1, 1, 1)


def concat_rank_trial(q: int, ks=(1, 1, 1), trials: int = 2000, seed: int = 0, *,
                      mats=None, nrows: int = 3, ncols=(2, 2, 3), ranks=(1, 1, 3),
                      regen_budget: int = 100) -> TrialReport:
    """Fraction of uniform draws ``E_i`` (``ncols_i x k_i``) giving
    ``rank([A1 E1, A2 E2, A3 E3]) = k1 + k2 + k3``.

    ``mats`` fixes the ``A_i``; otherwise they are random products with the
    prescribed ``ranks``, regenerated until the seven conditions hold.
    """
    F = Field(q)
    rng = np.random.default_rng([seed, q])
    if mats is None:
        for _ in range(regen_budget):
            mats = tuple(_random_rank_matrix(F, nrows, c, r, rng) for c, r in zip(ncols, ranks))
            if all(concat_conditions(mats, ks)):
                break
        else:
            raise ValueError(f"could not generate A's with ranks {ranks} meeting k={ks}")
    else:
        mats = tuple(Matrix(F, m.rows, m.nrows, m.ncols) for m in mats)
        if not all(concat_conditions(mats, ks)):
            raise ValueError("supplied A's violate the rank conditions")
    target = sum(ks)
    ok = 0
    for _ in range(trials):
        blocks = [A @ random_matrix(F, A.ncols, k, rng) for A, k in zip(mats, ks)]
        if rank(hstack(*blocks)) == target:
            ok += 1
    return TrialReport(trials, ok, q, {"ks": tuple(ks), "shapes": [m.shape for m in mats]})


@dataclass(frozen=True)
class EntropyCheck:
    entropy: int
    entropy_float: float
    bound: int

    @property
    def passed(self) -> bool:
        return self.entropy <= self.bound


@lru_cache(maxsize=64)
def _all_inputs(q: int, l: int) -> np.ndarray:
    idx = np.arange(q ** l, dtype=np.int64)
    X = np.stack([(idx // q ** j) % q for j in range(l)], axis=1) if l else np.zeros((1, 0))
    return X.astype(np.float64)


def entropy_bound_check(A: Matrix, B: Matrix) -> EntropyCheck:
    """``H(Ax | Bx)`` in base-``q`` units for uniform ``x``, by enumerating
    every ``x``, next to the bound ``rank([A; B]) - rank(B)``."""
    q = A.field.p
    if q is None or B.field != A.field:
        raise ValueError("entropy check needs two matrices over one prime field")
    l = A.ncols
    if B.ncols != l:
        raise ValueError("A and B must act on the same input space")
    total = q ** l
    if total > MAX_ENUMERATION:
        raise ValueError(f"enumeration of {q}^{l} inputs is too large")
    X = _all_inputs(q, l)

    def keys(M: Matrix):
        if M.nrows == 0:
            return np.zeros(len(X), dtype=np.int64), 1
        # float products are exact here (entries < q, at most 16 terms)
        Y = (X @ np.array(M.rows, dtype=np.float64).T).astype(np.int64) % q
        w = q ** np.arange(M.nrows, dtype=np.int64)
        return Y @ w, q ** M.nrows

    ka, _ = keys(A)
    kb, nb = keys(B)
    joint, joint_counts = np.unique(ka * nb + kb, return_counts=True)
    bvals, b_counts = np.unique(kb, return_counts=True)
    ratio = Fraction(len(joint), len(bvals))
    if ratio.denominator != 1:
        raise AssertionError("joint support is not a union of equal fibres")
    e = 0
    while q ** e < ratio.numerator:
        e += 1
    if q ** e != ratio.numerator:
        raise AssertionError(f"support ratio {ratio} is not a power of {q}")
    # general Shannon sum as a cross-check of the support count
    pb = b_counts[np.searchsorted(bvals, joint % nb)] / len(X)
    pj = joint_counts / len(X)
    h = float(-(pj * np.log(pj / pb)).sum() / math.log(q))
    if abs(h - e) > 1e-9:
        raise AssertionError(f"Shannon sum {h} disagrees with support count {e}")
    bound = rank(vstack(A, B)) - rank(B)
    return EntropyCheck(e, h, bound)


@dataclass
class SuiteReport:
    name: str
    instances: int = 0
    violations: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return f"{self.name}: {self.instances} instances, {len(self.violations)} violations"


def random_channel(F: Field, rng, max_dim: int = 4, dims=None, low_rank: bool = True) -> ChannelQuadruple:
    """Random channel; with ``low_rank`` each block gets a random rank."""
    m1, m2, n1, n2 = dims or [int(x) for x in rng.integers(1, max_dim + 1, size=4)]

    def blk(nr, nc):
        if low_rank:
            return _random_rank_matrix(F, nr, nc, int(rng.integers(0, min(nr, nc) + 1)), rng)
        return random_matrix(F, nr, nc, rng)

    return ChannelQuadruple(blk(n1, m1), blk(n1, m2), blk(n2, m1), blk(n2, m2))


def is_nondegenerate(ch: ChannelQuadruple) -> bool:
    """Every block, every side-by-side or stacked pair sharing an input or
    output, and both cross-block matrices have the largest rank their zero
    patterns allow.

    ``[[H11, H12], [H21, 0]]`` has an ``n2 x m2`` zero block, so by Konig's
    theorem its rank is at most ``min(m1 + m2, n1 + n2, n1 + m1)``.
    """
    F = ch.field
    blocks = [ch.H11, ch.H12, ch.H21, ch.H22]
    stacked = [hstack(ch.H11, ch.H12), hstack(ch.H21, ch.H22),
               vstack(ch.H11, ch.H21), vstack(ch.H12, ch.H22)]
    if any(rank(H) != min(H.shape) for H in blocks + stacked):
        return False
    c1 = vstack(hstack(ch.H11, ch.H12), hstack(ch.H21, Matrix.zeros(F, ch.n2, ch.m2)))
    c2 = vstack(hstack(ch.H21, ch.H22), hstack(Matrix.zeros(F, ch.n1, ch.m1), ch.H12))
    full = min(ch.m1 + ch.m2, ch.n1 + ch.n2)
    return (rank(c1) == min(full, ch.n1 + ch.m1)
            and rank(c2) == min(full, ch.n2 + ch.m2))


def generic_channel(F: Field, rng, dims, budget: int = 100) -> ChannelQuadruple:
    """Uniform random channel conditioned on :func:`is_nondegenerate`."""
    for _ in range(budget):
        ch = random_channel(F, rng, dims=dims, low_rank=False)
        if is_nondegenerate(ch):
            return ch
    raise RuntimeError(f"no nondegenerate draw over {F} for dims {dims}")


def _channel_json(ch: ChannelQuadruple) -> dict:
    return {"field": ch.field.to_json(), "H11": ch.H11.to_json(), "H12": ch.H12.to_json(),
            "H21": ch.H21.to_json(), "H22": ch.H22.to_json(),
            "m1": ch.m1, "m2": ch.m2, "n1": ch.n1, "n2": ch.n2}


def block_rank_identities(ch: ChannelQuadruple) -> dict:
    """Both sides of the two block-rank identities for one channel."""
    F = ch.field
    dec12 = interference_decomposition(ch.H12)
    dec21 = interference_decomposition(ch.H21)
    a = rank(dec12.W_bot @ ch.H11 @ dec21.V10)
    b = rank(dec21.W_bot @ ch.H22 @ dec12.V10)
    c1 = vstack(hstack(ch.H11, ch.H12), hstack(ch.H21, Matrix.zeros(F, ch.n2, ch.m2)))
    c2 = vstack(hstack(ch.H21, ch.H22), hstack(Matrix.zeros(F, ch.n1, ch.m1), ch.H12))
    return {"cross1": independent_rank(c1), "cross2": independent_rank(c2),
            "formula1": a + dec21.rank + dec12.rank, "formula2": b + dec21.rank + dec12.rank}


def product_rank_identities(A: Matrix, B: Matrix) -> dict:
    """``rank(AB)`` directly and through the two null-space/range intersections."""
    via_B = rank(B) - subspace_intersection_dim(null_space_basis(A), column_space_basis(B))
    via_A = rank(A) - subspace_intersection_dim(null_space_basis(B.T), column_space_basis(A.T))
    return {"direct": independent_rank(A @ B), "via_B": via_B, "via_A": via_A}


def rank_identity_suite(trials: int = 1000, fields=None, seed: int = 0,
                        max_dim: int = 4) -> SuiteReport:
    fields = fields or [Field(2), Field(7), Field(257), Field.rational()]
    rep = SuiteReport("rank-identities")
    for fi, F in enumerate(fields):
        rng = np.random.default_rng([seed, fi])
        for t in range(trials):
            ch = random_channel(F, rng, max_dim)
            got = block_rank_identities(ch)
            if got["cross1"] != got["formula1"] or got["cross2"] != got["formula2"]:
                rep.violations.append({"kind": "block", "channel": _channel_json(ch), **got})
            p, l, k = (int(x) for x in rng.integers(1, max_dim + 1, size=3))
            A = _random_rank_matrix(F, p, l, int(rng.integers(0, min(p, l) + 1)), rng)
            B = _random_rank_matrix(F, l, k, int(rng.integers(0, min(l, k) + 1)), rng)
            got = product_rank_identities(A, B)
            if not got["direct"] == got["via_B"] == got["via_A"]:
                rep.violations.append({"kind": "product", "A": A.to_json(), "B": B.to_json(),
                                       "field": F.to_json(), **got})
            rep.instances += 1
    return rep


def achievability_sweep(ch: ChannelQuadruple, seed: int = 0, round_trips: int = 10,
                        retry_budget: int = 32) -> SuiteReport:
    """Every lattice point of the bounding box: inside points must be
    achieved by an exact codec, outside points must have no split."""
    if ch.field.is_rational:
        raise ValueError("sweep needs a prime field")
    ch, _ = reduce_channel(ch)
    reg = capacity_region(ch)
    bounds = split_bounds(ch)
    rng = np.random.default_rng([seed, 1])
    rep = SuiteReport("achievability")
    F = ch.field
    for R1 in range(ch.m1 + 1):
        for R2 in range(ch.m2 + 1):
            rep.instances += 1
            inside = reg.contains((R1, R2))
            split = find_split(bounds, (R1, R2))
            if not inside:
                if split is not None:
                    rep.violations.append({"point": (R1, R2), "error": f"outside but split {split}"})
                continue
            if split is None:
                rep.violations.append({"point": (R1, R2), "error": "inside but no split"})
                continue
            try:
                codec = build_codec(ch, split, seed=seed, retry_budget=retry_budget)
            except CodecError as exc:
                rep.violations.append({"point": (R1, R2), "error": str(exc)})
                continue
            for _ in range(round_trips):
                d1 = [F.random(rng) for _ in range(R1)]
                d2 = [F.random(rng) for _ in range(R2)]
                if not codec.round_trip(d1, d2):
                    rep.violations.append({"point": (R1, R2), "error": "decode mismatch",
                                           "d1": d1, "d2": d2})
                    break
    return rep


def enumerate_subspaces(l: int, k: int, q: int) -> set[frozenset]:
    """All ``k``-dimensional subspaces of ``F_q^l``, each as its set of vectors.

    Walks every reduced row echelon form (choice of pivot columns, free
    entries to the right of each pivot) and expands its row space.
    """
    spaces = set()
    for pivots in combinations(range(l), k):
        free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, l) if j not in pivots]
        for vals in product(range(q), repeat=len(free)):
            rows = [[0] * l for _ in range(k)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            span = frozenset(
                tuple(sum(c * r[j] for c, r in zip(coef, rows)) % q for j in range(l))
                for coef in product(range(q), repeat=k))
            spaces.add(span)
    return spaces


def subspace_count_check(l: int, q: int) -> SuiteReport:
    rep = SuiteReport(f"subspaces(l={l}, q={q})")
    for k in range(l + 1):
        rep.instances += 1
        found = enumerate_subspaces(l, k, q)
        sizes = {len(s) for s in found}
        expect = gaussian_binomial(l, k, q)
        if len(found) != expect or sizes != {q ** k}:
            rep.violations.append({"l": l, "k": k, "q": q, "enumerated": len(found),
                                   "formula": expect})
    return rep


def entropy_suite(pairs=None, per_pair: int = 100, seed: int = 0) -> SuiteReport:
    pairs = pairs or default_entropy_grid()
    rep = SuiteReport("entropy")
    for q, l in pairs:
        F = Field(q)
        rng = np.random.default_rng([seed, q, l])
        for _ in range(per_pair):
            a, b = (int(x) for x in rng.integers(0, l + 1, size=2))
            A, B = random_matrix(F, a, l, rng), random_matrix(F, b, l, rng)
            res = entropy_bound_check(A, B)
            rep.instances += 1
            if not res.passed:
                rep.violations.append({"q": q, "A": A.to_json(), "B": B.to_json(),
                                       "entropy": res.entropy, "bound": res.bound})
    return rep


def default_entropy_grid(primes=(2, 3, 5, 7, 251)) -> list[tuple[int, int]]:
    return [(q, l) for q in primes for l in range(1, 17) if q ** l <= MAX_ENUMERATION]
