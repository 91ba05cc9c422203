import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from detic.field import Field
from detic.fixtures import disjoint_network, relay_network, single_edge_network
from detic.netcode import (ContainmentError, Network, NetworkError, RankBudgetError, MinCuts,
                           baseline_regions, containment_check, min_cuts, nc_region, parse_network,
                           random_network, rlnc_transfer, cut_ranks)
from detic.region import RateRegion

F = Field(65537)


def net(edges, extra=()):
    nodes = ("s1", "s2", "t1", "t2", *extra)
    return Network(nodes, tuple(edges), "s1", "s2", "t1", "t2")


def test_parse_round_trip():
    n = relay_network()
    assert parse_network(json.dumps(n.to_json())) == n
    with open("data/relay_network.json") as fh:
        assert parse_network(fh.read()) == n


@pytest.mark.parametrize("obj, msg", [
    ({"nodes": ["s1", "s2", "t1", "t2"], "edges": [["s1", "t1"], ["t1", "s1"]],
      "s1": "s1", "s2": "s2", "t1": "t1", "t2": "t2"}, "not acyclic"),
    ({"nodes": ["s1", "s2", "t1"], "edges": [], "s1": "s1", "s2": "s2", "t1": "t1", "t2": "t2"},
     "not a node"),
    ({"nodes": ["s1", "s2", "t1", "t2"], "edges": [["s1", "x"]],
      "s1": "s1", "s2": "s2", "t1": "t1", "t2": "t2"}, "unknown endpoint"),
    ({"nodes": ["s1", "s2", "t1", "t2"], "edges": []}, "missing keys"),
    ({"nodes": ["s1", "s2", "t1", "t2"], "edges": [["s1"]],
      "s1": "s1", "s2": "s2", "t1": "t1", "t2": "t2"}, "pair"),
    ({"nodes": ["s1", "s2", "t1", "t2"], "edges": [],
      "s1": "s1", "s2": "s1", "t1": "t1", "t2": "t2"}, "distinct"),
])
def test_parse_errors(obj, msg):
    with pytest.raises(NetworkError, match=msg):
        parse_network(obj)


def test_min_cuts_examples():
    assert min_cuts(relay_network()).as_tuple() == (2, 1, 1, 2, 2, 2, 2, 2)
    assert min_cuts(single_edge_network()).as_tuple() == (1, 0, 0, 0, 1, 0, 1, 0)
    assert min_cuts(disjoint_network(3)).as_tuple() == (3, 0, 0, 3, 3, 3, 3, 3)


def test_parallel_edges_add_capacity():
    n = net([("s1", "t1")] * 3 + [("s2", "t1")])
    c = min_cuts(n)
    assert (c.k11, c.k21, c.k12_1) == (3, 1, 4)


@given(st.integers(0, 2 ** 32))
def test_min_cuts_ignore_edge_order(seed):
    rng = np.random.default_rng(seed)
    n = random_network(rng)
    perm = rng.permutation(len(n.edges))
    m = Network(n.nodes, tuple(n.edges[i] for i in perm), n.s1, n.s2, n.t1, n.t2)
    assert min_cuts(n) == min_cuts(m)


def test_relay_realization_meets_cuts():
    r = rlnc_transfer(relay_network(), F, seed=0)
    assert cut_ranks(r.channel) == r.cuts
    assert (r.channel.n1, r.channel.n2) == (2, 2)
    assert len(r.coefficients) == len(relay_network().edges)


def test_realization_is_reproducible():
    a = rlnc_transfer(relay_network(), F, seed=5)
    b = rlnc_transfer(relay_network(), F, seed=5)
    assert a.coefficients == b.coefficients and a.channel == b.channel


def test_small_field_retries_or_reports_budget():
    # two sessions sharing a width-2 bottleneck; F2 draws often lose rank
    edges = [("s1", "m"), ("s1", "m"), ("s2", "m"), ("s2", "m"),
             ("m", "n"), ("m", "n"), ("n", "t1"), ("n", "t1"), ("n", "t2"), ("n", "t2")]
    n = net(edges, ("m", "n"))
    attempts = []
    for seed in range(30):
        try:
            attempts.append(rlnc_transfer(n, Field(2), seed=seed).attempts)
        except RankBudgetError:
            pass
    assert attempts and max(attempts) > 1
    failing = next(s for s in range(200) if _fails_once(n, s))
    with pytest.raises(RankBudgetError) as info:
        rlnc_transfer(n, Field(2), seed=failing, retry_budget=1)
    assert info.value.ranks["required"] == min_cuts(n).as_tuple()


def _fails_once(n, seed):
    try:
        rlnc_transfer(n, Field(2), seed=seed, retry_budget=1)
    except RankBudgetError:
        return True
    return False


def test_rational_field_rejected():
    with pytest.raises(ValueError):
        rlnc_transfer(relay_network(), Field.rational())


def test_region_examples():
    assert nc_region(rlnc_transfer(relay_network(), F)).equals(
        RateRegion(((1, 0, 2), (0, 1, 2), (1, 1, 3))))
    assert nc_region(rlnc_transfer(single_edge_network(), F)).equals(
        RateRegion(((1, 0, 1), (0, 1, 0))))
    assert nc_region(rlnc_transfer(disjoint_network(2), F)).equals(RateRegion.box(2, 2))


def test_baseline_examples():
    b = baseline_regions(min_cuts(relay_network()))
    assert b["region1"].equals(RateRegion.box(1, 1))
    assert b["region4"].equals(RateRegion(((1, 0, 2), (2, 1, 2))))
    c = MinCuts(2, 1, 1, 2, 2, 2, 2, 2)
    assert b["region2p"].equals(RateRegion(((1, 0, 2), (0, 1, 1), (1, 1, 2))))
    z = baseline_regions(MinCuts(0, 0, 0, 0, 0, 0, 0, 0))
    assert all(r.equals(RateRegion.origin()) for r in z.values())
    assert baseline_regions(c)["region5"].equals(b["region4"].swapped())


def test_relay_enlargement_is_strict():
    rep = containment_check(rlnc_transfer(relay_network(), F))
    assert rep.contained and rep.strict123 and rep.strict45
    assert rep.summary().startswith("baselines contained: yes; strict: yes")


def test_disjoint_network_is_not_strict():
    rep = containment_check(rlnc_transfer(disjoint_network(2), F))
    assert rep.contained and not rep.strict123


def test_containment_failure_raises():
    real = rlnc_transfer(relay_network(), F)
    tampered = real.__class__(real.network, real.field, real.seed, real.attempts,
                              real.coefficients, real.channel,
                              MinCuts(5, 1, 1, 5, 2, 2, 2, 2))
    with pytest.raises(NetworkError):
        containment_check(tampered)
    assert issubclass(ContainmentError, AssertionError)


def test_extra_edge_to_shared_node_is_zero_forced():
    # s2 routes around v, so the extra edge costs user 1 nothing
    before = net([("s1", "v"), ("v", "t1"), ("s2", "t2")], ("v",))
    after = before.with_edge("s2", "v")
    assert nc_region(rlnc_transfer(before, F)).equals(RateRegion.box(1, 1))
    assert nc_region(rlnc_transfer(after, F)).equals(RateRegion.box(1, 1))


def test_interference_only_path_shares_the_cut():
    n = net([("s1", "v"), ("s2", "v"), ("v", "t1"), ("s2", "t2")], ("v",))
    n = Network(n.nodes, n.edges[:3] + (("v", "t2"),), "s1", "s2", "t1", "t2")
    assert nc_region(rlnc_transfer(n, F)).equals(RateRegion(((1, 0, 1), (0, 1, 1), (1, 1, 1))))


@given(st.integers(0, 2 ** 32))
def test_adding_an_edge_never_shrinks_the_region(seed):
    rng = np.random.default_rng(seed)
    n = random_network(rng, max_nodes=7, max_edges=8)
    a = int(rng.integers(0, len(n.nodes) - 1))
    b = int(rng.integers(a + 1, len(n.nodes)))
    m = n.with_edge(n.nodes[a], n.nodes[b])
    assert nc_region(rlnc_transfer(n, F, seed)).issubset(nc_region(rlnc_transfer(m, F, seed)))


@given(st.integers(0, 2 ** 32))
def test_random_networks_contain_baselines(seed):
    rng = np.random.default_rng(seed)
    r = rlnc_transfer(random_network(rng), F, seed=seed)
    assert cut_ranks(r.channel) == r.cuts
    assert containment_check(r, strict=False).contained
