"""Command-line front end.

    detic region  --channel ch.json [--form ranks|reduced] [--out r.json]
    detic netcode --network net.json [--field P] [--seed S] [--compare]
    detic demo    --channel ch.json --rate R1,R2 [--seed S] [--codec inj.json]
                  [--messages '1;2,3']
    detic verify  --suite NAME [--trials N] [--seed S]

Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 random draws kept
failing, 4 requested rate pair not achievable.  ``DETIC_SEED`` sets the
default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET, EXIT_INFEASIBLE = 0, 1, 2, 3, 4

SUITES = ("rank-identities", "entropy", "subspaces", "concat", "achievability",
          "containment")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _default_seed() -> int:
    raw = os.environ.get("DETIC_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"DETIC_SEED must be an integer, got {raw!r}") from None


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _emit(obj, out: str | None):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_region(args) -> int:
    from .channel import capacity_region
    from .io import load_channel, region_to_json, sha256_text

    text = _read(args.channel)
    ch = load_channel(text)
    reg = capacity_region(ch, form=args.form)
    prov = {"command": "region", "form": args.form, "seed": None,
            "input_sha256": sha256_text(text)}
    _emit(region_to_json(reg, prov), args.out)
    return EXIT_OK


def cmd_netcode(args) -> int:
    from .field import Field
    from .io import region_to_json, sha256_text
    from .netcode import (RankBudgetError, baseline_regions, containment_check, min_cuts,
                          nc_region, parse_network, rlnc_transfer)

    text = _read(args.network)
    net = parse_network(text)
    seed = args.seed if args.seed is not None else _default_seed()
    cuts = min_cuts(net)
    try:
        real = rlnc_transfer(net, Field(args.field), seed, args.retries, cuts)
    except RankBudgetError as exc:
        raise CliError(str(exc), EXIT_BUDGET) from None
    reg = nc_region(real)
    prov = {"command": "netcode", "field": args.field, "seed": seed,
            "input_sha256": sha256_text(text), "attempts": real.attempts}
    out = region_to_json(reg, prov)
    out["cuts"] = dict(zip(("k11", "k12", "k21", "k22", "k1_12", "k2_12", "k12_1", "k12_2"),
                           cuts.as_tuple()))
    if args.compare:
        rep = containment_check(real, strict=False)
        out["baselines"] = {k: str(r) for k, r in baseline_regions(cuts).items()}
        out["containment"] = {
            "hull_regions_1_2p_3p": str(rep.hull123), "hull_regions_4_5": str(rep.hull45),
            "contained": rep.contained, "strict_1_2p_3p": rep.strict123,
            "strict_4_5": rep.strict45, "summary": rep.summary(),
        }
        print(rep.summary(), file=sys.stderr)
        _emit(out, args.out)
        return EXIT_OK if rep.contained else EXIT_FAIL
    _emit(out, args.out)
    return EXIT_OK


def _parse_rate(text: str) -> tuple[int, int]:
    try:
        r1, r2 = (int(x) for x in text.split(","))
    except ValueError:
        raise CliError(f"--rate must be two integers 'R1,R2', got {text!r}") from None
    if r1 < 0 or r2 < 0:
        raise CliError("rates must be nonnegative")
    return r1, r2


def _parse_messages(text: str, F):
    try:
        parts = text.split(";")
        if len(parts) != 2:
            raise ValueError
        return tuple(tuple(F(int(x)) for x in p.split(",") if x.strip()) for p in parts)
    except ValueError:
        raise CliError(f"--messages must look like 'a,b;c,d', got {text!r}") from None


def _fmt(vec) -> str:
    return "(" + ", ".join(str(x) for x in vec) + ")"


def cmd_demo(args) -> int:
    import numpy as np

    from .io import codec_injection, load_channel
    from .ratesplit import CodecError, build_codec, find_split, split_bounds

    ch = load_channel(_read(args.channel))
    if ch.field.is_rational:
        raise CliError("demo needs a prime field")
    rate = _parse_rate(args.rate)
    seed = args.seed if args.seed is not None else _default_seed()
    spreading, decomps = None, None
    if args.codec:
        spreading, decomps = codec_injection(json.loads(_read(args.codec)), ch)
    elif not ch.is_reduced():
        raise CliError("demo needs a reduced channel (independent rows and columns)")
    dec12, dec21 = decomps if decomps else (None, None)
    split = find_split(split_bounds(ch, dec12, dec21), rate)
    if split is None:
        raise CliError(f"infeasible split: rate pair {rate} is outside the region",
                       EXIT_INFEASIBLE)
    try:
        codec = build_codec(ch, split, seed, args.retries, spreading=spreading, decomps=decomps)
    except CodecError as exc:
        raise CliError(str(exc), EXIT_BUDGET) from None
    F = ch.field
    rng = np.random.default_rng([seed, 2])
    if args.messages is not None:
        d1, d2 = _parse_messages(args.messages, F)
        if (len(d1), len(d2)) != rate:
            raise CliError(f"--messages lengths ({len(d1)}, {len(d2)}) do not match rate {rate}")
    else:
        d1 = tuple(F.random(rng) for _ in range(split.R1))
        d2 = tuple(F.random(rng) for _ in range(split.R2))
    x1, x2 = codec.encode(d1, d2)
    y1, y2 = ch.transmit(x1, x2)
    got1, got2 = codec.decode_t1(y1), codec.decode_t2(y2)
    ok = got1[0] + got1[1] == d1 and got2[0] + got2[1] == d2
    lines = [
        f"field {F}, rate ({split.R1}, {split.R2}), seed {seed}, draws {codec.attempts}",
        f"split R1c={split.R1c} R1p={split.R1p} R2c={split.R2c} R2p={split.R2p}",
    ]
    for name in ("E1c", "E1p", "E2c", "E2p"):
        lines.append(f"{name} = {getattr(codec, name).tolist()}")
    lines += [
        f"d1 = {_fmt(d1)}  d2 = {_fmt(d2)}",
        f"x1 = {_fmt(x1)}  x2 = {_fmt(x2)}",
        f"y1 = {_fmt(y1)}  y2 = {_fmt(y2)}",
        f"t1 decodes d1c={_fmt(got1[0])} d1p={_fmt(got1[1])} d2c={_fmt(got1[2])}",
        f"t2 decodes d2c={_fmt(got2[0])} d2p={_fmt(got2[1])} d1c={_fmt(got2[2])}",
        "PASS" if ok else "FAIL",
    ]
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    import numpy as np

    from . import oracle
    from .field import Field

    seed = args.seed if args.seed is not None else _default_seed()
    trials = args.trials
    t0 = time.perf_counter()
    if args.suite == "rank-identities":
        reps = [oracle.rank_identity_suite(trials or 1000, seed=seed)]
    elif args.suite == "entropy":
        reps = [oracle.entropy_suite(per_pair=trials or 100, seed=seed)]
    elif args.suite == "subspaces":
        reps = [oracle.subspace_count_check(l, q) for l in range(1, 5) for q in (2, 3)]
    elif args.suite == "achievability":
        rng = np.random.default_rng([seed, 3])
        rep = oracle.SuiteReport("achievability")
        for _ in range(trials or 50):
            ch = oracle.random_channel(Field(257), rng, low_rank=False)
            sub = oracle.achievability_sweep(ch, seed)
            rep.instances += sub.instances
            rep.violations += sub.violations
        reps = [rep]
    elif args.suite == "containment":
        from .netcode import containment_check, random_network, rlnc_transfer
        rng = np.random.default_rng([seed, 4])
        rep = oracle.SuiteReport("containment")
        for i in range(trials or 500):
            net = random_network(rng)
            rep.instances += 1
            if not containment_check(rlnc_transfer(net, Field(65537), seed + i), strict=False).contained:
                rep.violations.append(net.to_json())
        reps = [rep]
    else:
        reps = []
        for q in (7, 101, 1009):
            mats, ks = oracle.concat_instance(q)
            r = oracle.concat_rank_trial(q, ks, trials or 2000, seed, mats=mats)
            lo, hi = r.wilson()
            rep = oracle.SuiteReport(f"concat(q={q})", r.trials)
            if hi < 1 - 5 / q:
                rep.violations.append({"q": q, "rate": str(r.rate), "wilson": [lo, hi]})
            print(f"q={q}: success {r.successes}/{r.trials}, Wilson 95% [{lo:.4f}, {hi:.4f}], "
                  f"K={r.fitted_K:.3f}")
            reps.append(rep)
    bad = 0
    for rep in reps:
        print(rep.summary())
        for v in rep.violations[:5]:
            print("  " + json.dumps(v, default=str))
        bad += len(rep.violations)
    print(f"{bad} violations ({time.perf_counter() - t0:.2f} s)")
    return EXIT_OK if bad == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="detic", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("region", help="capacity region of a channel file")
    p.add_argument("--channel", required=True)
    p.add_argument("--form", choices=("ranks", "reduced"), default="ranks")
    p.add_argument("--out")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("netcode", help="coded region of a double-unicast network")
    p.add_argument("--network", required=True)
    p.add_argument("--field", type=int, default=65537)
    p.add_argument("--seed", type=int)
    p.add_argument("--retries", type=int, default=32)
    p.add_argument("--compare", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_netcode)

    p = sub.add_parser("demo", help="encode, transmit and decode one message pair")
    p.add_argument("--channel", required=True)
    p.add_argument("--rate", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--retries", type=int, default=32)
    p.add_argument("--codec", help="JSON with fixed spreading matrices and bases")
    p.add_argument("--messages", help="symbols as 'd1;d2', e.g. '1;2,3' (default random)")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
