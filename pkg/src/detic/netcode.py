"""Double-unicast networks with random linear network coding.

A directed acyclic network with unit-capacity edges carries two sessions,
``s1 -> t1`` and ``s2 -> t2``.  With random linear coding at every node the
end-to-end map is a linear deterministic interference channel, so its
achievable region follows from :func:`detic.channel.capacity_region`.

Min-cut notation: ``k11`` is the cut from ``s1`` to ``t1``, ``k12`` from
``s1`` to ``t2``, ``k1_12`` from ``s1`` to ``{t1, t2}`` and ``k12_1`` from
``{s1, s2}`` to ``t1``; the rest follow the same pattern.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from graphlib import CycleError, TopologicalSorter

import numpy as np

from .channel import ChannelQuadruple, capacity_region, rank_profile, rank_inequalities
from .field import Field
from .linalg import rank, rank_rref
from .matrix import Matrix, hstack, vstack
from .region import RateRegion, convex_hull_union

ROLES = ("s1", "s2", "t1", "t2")


class NetworkError(ValueError):
    pass


class RankBudgetError(RuntimeError):
    """Random coefficients kept missing the min-cut ranks."""

    def __init__(self, message: str, ranks: dict | None = None):
        super().__init__(message)
        self.ranks = ranks or {}


class ContainmentError(AssertionError):
    pass


@dataclass(frozen=True)
class Network:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    s1: str
    s2: str
    t1: str
    t2: str

    def __post_init__(self):
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise NetworkError("duplicate node names")
        for r in ROLES:
            if getattr(self, r) not in known:
                raise NetworkError(f"role node {r}={getattr(self, r)!r} is not a node")
        if len({self.s1, self.s2, self.t1, self.t2}) != 4:
            raise NetworkError("s1, s2, t1, t2 must be four distinct nodes")
        for u, v in self.edges:
            if u not in known or v not in known:
                raise NetworkError(f"edge ({u!r}, {v!r}) has an unknown endpoint")
        try:
            tuple(self._sorter().static_order())
        except CycleError as exc:
            raise NetworkError(f"network is not acyclic: {exc.args[1]}") from None

    def _sorter(self) -> TopologicalSorter:
        ts = TopologicalSorter({n: () for n in self.nodes})
        for u, v in self.edges:
            ts.add(v, u)
        return ts

    def topological_order(self) -> list[str]:
        return list(self._sorter().static_order())

    def with_edge(self, u: str, v: str) -> Network:
        return Network(self.nodes, self.edges + ((u, v),), self.s1, self.s2, self.t1, self.t2)

    def to_json(self) -> dict:
        return {"nodes": list(self.nodes), "edges": [list(e) for e in self.edges],
                **{r: getattr(self, r) for r in ROLES}}


def parse_network(text: str | dict) -> Network:
    obj = json.loads(text) if isinstance(text, str) else text
    if not isinstance(obj, dict):
        raise NetworkError("network must be a JSON object")
    missing = [k for k in ("nodes", "edges", *ROLES) if k not in obj]
    if missing:
        raise NetworkError(f"missing keys: {', '.join(missing)}")
    edges = []
    for e in obj["edges"]:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise NetworkError(f"edge must be a [tail, head] pair, got {e!r}")
        edges.append((str(e[0]), str(e[1])))
    return Network(tuple(str(n) for n in obj["nodes"]), tuple(edges),
                   *(str(obj[r]) for r in ROLES))


@dataclass(frozen=True)
class MinCuts:
    k11: int
    k12: int
    k21: int
    k22: int
    k1_12: int
    k2_12: int
    k12_1: int
    k12_2: int

    def as_tuple(self) -> tuple[int, ...]:
        return (self.k11, self.k12, self.k21, self.k22,
                self.k1_12, self.k2_12, self.k12_1, self.k12_2)


def _max_flow(net: Network, sources, sinks) -> int:
    import networkx as nx

    G = nx.DiGraph()
    G.add_nodes_from(net.nodes)
    for u, v in net.edges:
        if G.has_edge(u, v):
            G[u][v]["capacity"] += 1
        else:
            G.add_edge(u, v, capacity=1)
    S, T = ("super", "source"), ("super", "sink")
    # edges without a capacity attribute are unbounded
    for s in sources:
        G.add_edge(S, s)
    for t in sinks:
        G.add_edge(t, T)
    return int(nx.maximum_flow_value(G, S, T))


def min_cuts(net: Network) -> MinCuts:
    s1, s2, t1, t2 = net.s1, net.s2, net.t1, net.t2
    return MinCuts(
        _max_flow(net, [s1], [t1]), _max_flow(net, [s1], [t2]),
        _max_flow(net, [s2], [t1]), _max_flow(net, [s2], [t2]),
        _max_flow(net, [s1], [t1, t2]), _max_flow(net, [s2], [t1, t2]),
        _max_flow(net, [s1, s2], [t1]), _max_flow(net, [s1, s2], [t2]),
    )


def cut_ranks(ch: ChannelQuadruple) -> MinCuts:
    """The eight ranks that must equal the min-cuts, in :class:`MinCuts` layout."""
    return MinCuts(
        rank(ch.H11), rank(ch.H21), rank(ch.H12), rank(ch.H22),
        rank(vstack(ch.H11, ch.H21)), rank(vstack(ch.H12, ch.H22)),
        rank(hstack(ch.H11, ch.H12)), rank(hstack(ch.H21, ch.H22)),
    )


@dataclass(frozen=True)
class TransferRealization:
    network: Network
    field: Field
    seed: int
    attempts: int
    coefficients: tuple[tuple[int, ...], ...]
    channel: ChannelQuadruple
    cuts: MinCuts
    kept_edges1: tuple[int, ...] = dc_field(default=())
    kept_edges2: tuple[int, ...] = dc_field(default=())


def _draw_transfer(net: Network, F: Field, k1: int, k2: int, rng):
    """Global coding vectors of every edge for one coefficient draw.

    Edges are processed by topological position of their tail and then by
    input order; each edge draws one coefficient per incoming edge of its
    tail followed by one per source input injected there.
    """
    p = F.p
    dim = k1 + k2
    pos = {n: i for i, n in enumerate(net.topological_order())}
    incoming = {n: [] for n in net.nodes}
    for idx, (_, v) in enumerate(net.edges):
        incoming[v].append(idx)
    inject = {n: [] for n in net.nodes}
    inject[net.s1] = [[int(i == j) for j in range(dim)] for i in range(k1)]
    inject[net.s2] = [[int(i == j) for j in range(dim)] for i in range(k1, dim)]

    vecs: list = [None] * len(net.edges)
    coeffs: list = [None] * len(net.edges)
    order = sorted(range(len(net.edges)), key=lambda i: (pos[net.edges[i][0]], i))
    for idx in order:
        u = net.edges[idx][0]
        inputs = [vecs[j] for j in incoming[u]] + inject[u]
        c = [int(x) for x in rng.integers(0, p, size=len(inputs))]
        out = [0] * dim
        for a, vec in zip(c, inputs):
            if a:
                for j in range(dim):
                    out[j] = (out[j] + a * vec[j]) % p
        vecs[idx] = out
        coeffs[idx] = tuple(c)
    return vecs, tuple(coeffs), incoming


def rlnc_transfer(net: Network, field: Field, seed: int = 0, retry_budget: int = 32,
                  cuts: MinCuts | None = None) -> TransferRealization:
    """Random linear network code whose transfer matrices meet every min-cut.

    Each sink's observations are cut down to a maximal independent subset,
    so ``n_j`` equals the joint cut into ``t_j``.  Draws that fall short of
    any of the eight min-cut ranks are repeated with a fresh stream.
    """
    if field.is_rational:
        raise ValueError("network coding needs a prime field")
    cuts = cuts or min_cuts(net)
    k1, k2 = cuts.k1_12, cuts.k2_12
    last = None
    for attempt in range(retry_budget):
        rng = np.random.default_rng([seed, attempt])
        vecs, coeffs, incoming = _draw_transfer(net, field, k1, k2, rng)
        blocks = []
        kept = []
        for t in (net.t1, net.t2):
            G = Matrix(field, [vecs[i] for i in incoming[t]], len(incoming[t]), k1 + k2)
            rows = rank_rref(G.T)[1]
            kept.append(tuple(incoming[t][i] for i in rows))
            G = G.take_rows(rows)
            blocks.append((G.col_slice(0, k1), G.col_slice(k1, k1 + k2)))
        ch = ChannelQuadruple(blocks[0][0], blocks[0][1], blocks[1][0], blocks[1][1])
        got = cut_ranks(ch)
        if got == cuts:
            return TransferRealization(net, field, seed, attempt + 1, coeffs, ch, cuts,
                                       kept[0], kept[1])
        last = got
    raise RankBudgetError(
        f"transfer ranks {last.as_tuple()} never met min-cuts {cuts.as_tuple()} in "
        f"{retry_budget} draws over {field}; try a larger field",
        {"achieved": last.as_tuple(), "required": cuts.as_tuple()})


def cut_bounds(cuts: MinCuts) -> list[tuple[int, int, int]]:
    """The four region constraints that depend on min-cuts alone."""
    return [
        (1, 0, cuts.k11),
        (0, 1, cuts.k22),
        (1, 1, cuts.k12_1 + cuts.k2_12 - cuts.k21),
        (1, 1, cuts.k12_2 + cuts.k1_12 - cuts.k12),
    ]


def nc_region(real: TransferRealization, *, minimal: bool = True) -> RateRegion:
    ch = real.channel
    got = cut_ranks(ch)
    if got != real.cuts:
        raise NetworkError(f"realization ranks {got.as_tuple()} do not match "
                           f"min-cuts {real.cuts.as_tuple()}")
    rank_side = rank_inequalities(ch, rank_profile(ch))[:4]
    if rank_side != cut_bounds(real.cuts):
        raise NetworkError(f"rank constants {rank_side} disagree with min-cut "
                           f"constants {cut_bounds(real.cuts)}")
    return capacity_region(ch, minimal=minimal)


def baseline_regions(cuts: MinCuts) -> dict[str, RateRegion]:
    """Routing/alignment regions from earlier work, in closed form."""
    c = cuts
    low = min(c.k12_1, c.k12_2)
    return {
        "region1": RateRegion(((1, 0, max(0, c.k12_1 - c.k21)), (0, 1, max(0, c.k12_2 - c.k12)))),
        "region2p": RateRegion(((1, 0, c.k11), (0, 1, max(0, low - c.k12)), (1, 1, c.k12_1))),
        "region3p": RateRegion(((1, 0, max(0, low - c.k21)), (0, 1, c.k22), (1, 1, c.k12_2))),
        "region4": RateRegion(((1, 0, c.k11), (2, 1, c.k22))),
        "region5": RateRegion(((1, 2, c.k11), (0, 1, c.k22))),
    }


@dataclass(frozen=True)
class ContainmentReport:
    region: RateRegion
    hull123: RateRegion
    hull45: RateRegion
    contained123: bool
    contained45: bool
    witness123: tuple | None
    witness45: tuple | None

    @property
    def contained(self) -> bool:
        return self.contained123 and self.contained45

    @property
    def strict123(self) -> bool:
        return self.witness123 is not None

    @property
    def strict45(self) -> bool:
        return self.witness45 is not None

    def summary(self) -> str:
        yn = {True: "yes", False: "no"}
        return (f"baselines contained: {yn[self.contained]}; "
                f"strict: {yn[self.strict123 and self.strict45]} "
                f"(regions 1/2'/3': {yn[self.strict123]}, regions 4/5: {yn[self.strict45]})")


def containment_check(real: TransferRealization, *, strict: bool = True) -> ContainmentReport:
    """Compare the coded region with the time-sharing hulls of the baselines.

    With ``strict`` a containment failure raises :class:`ContainmentError`.
    """
    reg = nc_region(real)
    base = baseline_regions(real.cuts)
    h123 = convex_hull_union([base["region1"], base["region2p"], base["region3p"]])
    h45 = convex_hull_union([base["region4"], base["region5"]])

    def outside(inner, outer):
        for v in outer.vertices():
            if not inner.contains(v):
                return (v.R1, v.R2)
        return None

    rep = ContainmentReport(reg, h123, h45, h123.issubset(reg), h45.issubset(reg),
                            outside(h123, reg), outside(h45, reg))
    if strict and not rep.contained:
        raise ContainmentError(f"baseline hull escapes the coded region: {rep.summary()}; "
                               f"region {reg}, hulls {h123} and {h45}")
    return rep


def random_network(rng, max_nodes: int = 12, max_edges: int = 24) -> Network:
    """Random DAG with sources early and sinks late in the topological order."""
    n_mid = int(rng.integers(0, max_nodes - 3))
    mids = [f"v{i}" for i in range(n_mid)]
    head = ["s1", "s2"]
    tail = ["t1", "t2"]
    rng.shuffle(head)
    rng.shuffle(tail)
    order = head + mids + tail
    n = len(order)
    n_edges = int(rng.integers(1, max_edges + 1))
    edges = []
    for _ in range(n_edges):
        i = int(rng.integers(0, n - 1))
        j = int(rng.integers(i + 1, n))
        edges.append((order[i], order[j]))
    return Network(tuple(order), tuple(edges), "s1", "s2", "t1", "t2")
