"""One PASS/FAIL line per acceptance criterion; tolerances are pinned here."""
import itertools
import json
import subprocess
import sys
import time

import numpy as np
import pytest

from detic.channel import capacity_region
from detic.field import Field
from detic.fixtures import example_channel, example_decompositions, example_spreading, relay_network
from detic.matrix import Matrix
from detic.netcode import containment_check, min_cuts, random_network, rlnc_transfer, cut_ranks
from detic.oracle import (achievability_sweep, concat_rank_trial, concat_instance,
                          entropy_suite, generic_channel, random_channel, rank_identity_suite,
                          subspace_count_check)
from detic.ratesplit import RateSplit, build_codec
from detic.region import dof_region

GOLDEN_INEQS = {(1, 0, 2), (1, 1, 3), (2, 1, 4)}
GOLDEN_VERTS = [(0, 0), (2, 0), (1, 2), (0, 3)]
REGION_SECONDS = 1.0
EQUIV_CHANNELS, EQUIV_SECONDS = 1000, 60.0
DOF_PER_SHAPE, DOF_FIELD = 500, 65537
SWEEP_CHANNELS, SWEEP_SECONDS, ROUND_TRIPS, RETRIES = 50, 120.0, 10, 32
RANK_TRIALS = 1000
CONCAT_QS, CONCAT_TRIALS, CONCAT_SLACK = (7, 101, 1009), 2000, 5
DAGS, DAG_FIELD = 500, 65537


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_01_golden_region(capsys):
    t0 = time.perf_counter()
    res = subprocess.run([sys.executable, "-m", "detic.cli", "region",
                          "--channel", "data/example_channel.json"], capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    import json
    obj = json.loads(res.stdout)
    ineqs = {(i["a1"], i["a2"], i["b"]) for i in obj["inequalities"]}
    verts = [tuple(int(x) for x in v) for v in obj["vertices"]]
    ok = ineqs == GOLDEN_INEQS and verts == GOLDEN_VERTS and elapsed < REGION_SECONDS
    report(capsys, 1, ok, f"inequalities {sorted(ineqs)} (want {sorted(GOLDEN_INEQS)}), "
                          f"vertices match: {verts == GOLDEN_VERTS}, {elapsed:.2f} s")


def test_criterion_02_golden_codec(capsys):
    ch = example_channel()
    F = ch.field
    E = {k: Matrix(F, v) for k, v in example_spreading().items()}
    codec = build_codec(ch, RateSplit(1, 0, 1, 1), spreading=E, decomps=example_decompositions(ch))
    rng = np.random.default_rng(2)
    bad = []
    for _ in range(10):
        d11, d21, d22 = (int(x) for x in rng.integers(0, 7, size=3))
        x1, x2 = codec.encode([d11], [d21, d22])
        y1, y2 = ch.transmit(x1, x2)
        want = ((3 * d11, 2 * d11), (3 * d21 + 3 * d22, 5 * d21 + d22, 3 * d21),
                (6 * d11 + 4 * d21, 5 * d11),
                (3 * d21 + 3 * d22 + 3 * d11, 4 * d21 + 5 * d11, 5 * d11))
        want = tuple(tuple(v % 7 for v in w) for w in want)
        got1, got2 = codec.decode_t1(y1), codec.decode_t2(y2)
        decoded = (got1[0] + got1[1] == (d11,) and got2[0] + got2[1] == (d21, d22)
                   and got1[2] == (d21,) and got2[2] == (d11,))
        if (x1, x2, y1, y2) != want or not decoded:
            bad.append((d11, d21, d22))
    report(capsys, 2, not bad, f"10 message triples, mismatches {bad}")


def test_criterion_03_region_forms_agree(capsys):
    t0 = time.perf_counter()
    fields = [Field(2), Field(7), Field(257), Field.rational()]
    bad = 0
    for fi, F in enumerate(fields):
        rng = np.random.default_rng([3, fi])
        for _ in range(EQUIV_CHANNELS):
            ch = random_channel(F, rng, max_dim=4)
            if not capacity_region(ch, "ranks").equals(capacity_region(ch, "reduced")):
                bad += 1
    elapsed = time.perf_counter() - t0
    report(capsys, 3, bad == 0 and elapsed < EQUIV_SECONDS,
           f"{EQUIV_CHANNELS} channels x {len(fields)} fields, {bad} mismatches, {elapsed:.1f} s")


@pytest.mark.slow
def test_criterion_04_generic_channels_match_dof_region(capsys):
    F = Field(DOF_FIELD)
    rng = np.random.default_rng(4)
    bad = []
    t0 = time.perf_counter()
    for dims in itertools.product(range(1, 5), repeat=4):
        want = dof_region(*dims)
        for _ in range(DOF_PER_SHAPE):
            ch = generic_channel(F, rng, dims)
            if not capacity_region(ch, minimal=False).equals(want):
                bad.append(dims)
    report(capsys, 4, not bad, f"256 shapes x {DOF_PER_SHAPE} channels over F{DOF_FIELD}, "
                               f"{len(bad)} mismatches, {time.perf_counter() - t0:.0f} s")


def test_criterion_05_constructive_achievability(capsys):
    F = Field(257)
    rng = np.random.default_rng(5)
    t0 = time.perf_counter()
    points, bad = 0, []
    for i in range(SWEEP_CHANNELS):
        rep = achievability_sweep(random_channel(F, rng, max_dim=4), seed=i,
                                  round_trips=ROUND_TRIPS, retry_budget=RETRIES)
        points += rep.instances
        bad += rep.violations
    elapsed = time.perf_counter() - t0
    report(capsys, 5, not bad and elapsed < SWEEP_SECONDS,
           f"{SWEEP_CHANNELS} channels, {points} lattice points, {len(bad)} failures, {elapsed:.1f} s")


def test_criterion_06_rank_lemmas_and_subspace_counts(capsys):
    rep = rank_identity_suite(RANK_TRIALS, seed=6)
    subs = [subspace_count_check(l, q) for l in range(1, 5) for q in (2, 3)]
    bad = len(rep.violations) + sum(len(s.violations) for s in subs)
    report(capsys, 6, bad == 0, f"{rep.instances} rank instances, "
                                f"{sum(s.instances for s in subs)} subspace counts, {bad} violations")


def test_criterion_07_concatenation_success_rate(capsys):
    rows, ok = [], True
    fails = []
    for q in CONCAT_QS:
        mats, ks = concat_instance(q)
        r = concat_rank_trial(q, ks, CONCAT_TRIALS, seed=7, mats=mats)
        lo, hi = r.wilson()
        ok &= hi >= 1 - CONCAT_SLACK / q
        fails.append(r.failure_rate)
        rows.append(f"q={q} rate {float(r.rate):.4f} [{lo:.4f}, {hi:.4f}] K={r.fitted_K:.2f}")
    ok &= all(a > b for a, b in zip(fails, fails[1:]))
    report(capsys, 7, ok, "; ".join(rows))


def test_criterion_08_conditional_entropy_bound(capsys):
    rep = entropy_suite(per_pair=100, seed=8)
    report(capsys, 8, rep.passed, rep.summary())


@pytest.fixture(scope="module")
def dag_realizations():
    rng = np.random.default_rng(9)
    F = Field(DAG_FIELD)
    return [rlnc_transfer(random_network(rng, 12, 24), F, seed=i) for i in range(DAGS)]


def test_criterion_09_baselines_inside_coded_region(capsys, dag_realizations):
    bad = [i for i, r in enumerate(dag_realizations)
           if not containment_check(r, strict=False).contained]
    relay = containment_check(rlnc_transfer(relay_network(), Field(DAG_FIELD)))
    ok = not bad and relay.strict123 and relay.strict45
    report(capsys, 9, ok, f"{len(dag_realizations)} DAGs, {len(bad)} violations; "
                          f"relay: {relay.summary()}")


def test_criterion_10_transfer_ranks_match_cuts(capsys, dag_realizations):
    bad = [i for i, r in enumerate(dag_realizations)
           if cut_ranks(r.channel) != min_cuts(r.network)]
    report(capsys, 10, not bad, f"{len(dag_realizations)} DAGs, {len(bad)} rank/cut mismatches")
