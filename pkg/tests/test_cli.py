import json
import subprocess
import sys

import pytest

from detic.cli import main

CH = "data/example_channel.json"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_region_output(capsys):
    code, out, _ = run(capsys, "region", "--channel", CH)
    obj = json.loads(out)
    assert code == 0
    assert obj["vertices"] == [["0", "0"], ["2", "0"], ["1", "2"], ["0", "3"]]
    assert obj["provenance"]["command"] == "region"
    assert len(obj["provenance"]["input_sha256"]) == 64


def test_region_forms_agree(capsys, tmp_path):
    outs = []
    for form in ("ranks", "reduced"):
        path = tmp_path / f"{form}.json"
        assert run(capsys, "region", "--channel", CH, "--form", form, "--out", str(path))[0] == 0
        outs.append(json.loads(path.read_text())["vertices"])
    assert outs[0] == outs[1]


def test_region_bad_input(capsys, tmp_path):
    assert run(capsys, "region", "--channel", str(tmp_path / "none.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": {"type": "prime", "p": 7}, "m1": 1}')
    code, _, err = run(capsys, "region", "--channel", str(bad))
    assert code == 2 and "missing key" in err
    bad.write_text("not json")
    assert run(capsys, "region", "--channel", str(bad))[0] == 2


def test_unknown_choice_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["region", "--channel", CH, "--form", "other"])
    assert info.value.code == 2


def test_demo_with_injected_codec(capsys):
    code, out, _ = run(capsys, "demo", "--channel", CH, "--rate", "1,2",
                       "--codec", "data/example_codec.json", "--messages", "1;2,3")
    assert code == 0
    assert "x1 = (3, 2)" in out and "y1 = (0, 5)" in out
    assert out.rstrip().endswith("PASS")


def test_demo_random_codec_and_seed(capsys, monkeypatch):
    monkeypatch.setenv("DETIC_SEED", "11")
    code, out, _ = run(capsys, "demo", "--channel", CH, "--rate", "1,2")
    assert code == 0 and "seed 11" in out
    assert run(capsys, "demo", "--channel", CH, "--rate", "1,2")[1] == out
    monkeypatch.setenv("DETIC_SEED", "x")
    assert run(capsys, "demo", "--channel", CH, "--rate", "1,2")[0] == 2


def test_demo_infeasible_rate(capsys):
    code, _, err = run(capsys, "demo", "--channel", CH, "--rate", "2,2")
    assert code == 4 and "infeasible" in err


def test_demo_bad_arguments(capsys):
    assert run(capsys, "demo", "--channel", CH, "--rate", "1")[0] == 2
    assert run(capsys, "demo", "--channel", CH, "--rate", "1,2", "--messages", "1;2")[0] == 2


def test_netcode_compare(capsys):
    code, out, err = run(capsys, "netcode", "--network", "data/relay_network.json", "--compare")
    obj = json.loads(out)
    assert code == 0
    assert obj["cuts"]["k11"] == 2 and obj["containment"]["contained"]
    assert "baselines contained: yes; strict: yes" in err


def test_netcode_budget_exhausted(capsys, tmp_path):
    net = {"nodes": ["s1", "s2", "m", "n", "t1", "t2"],
           "edges": [["s1", "m"], ["s2", "m"], ["m", "n"], ["n", "t1"], ["n", "t2"],
                     ["s1", "t2"], ["s2", "t1"]],
           "s1": "s1", "s2": "s2", "t1": "t1", "t2": "t2"}
    path = tmp_path / "net.json"
    path.write_text(json.dumps(net))
    codes = {run(capsys, "netcode", "--network", str(path), "--field", "2", "--retries", "1",
                 "--seed", str(s))[0] for s in range(40)}
    assert 3 in codes


def test_netcode_cycle_is_input_error(capsys, tmp_path):
    path = tmp_path / "cyc.json"
    path.write_text(json.dumps({"nodes": ["s1", "s2", "t1", "t2"],
                                "edges": [["s1", "t1"], ["t1", "s1"]],
                                "s1": "s1", "s2": "s2", "t1": "t1", "t2": "t2"}))
    code, _, err = run(capsys, "netcode", "--network", str(path))
    assert code == 2 and "acyclic" in err


@pytest.mark.parametrize("suite", ["subspaces", "concat", "achievability", "containment",
                                   "rank-identities", "entropy"])
def test_verify_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--trials", "5")
    assert code == 0 and "0 violations" in out


def test_console_script_runs():
    res = subprocess.run([sys.executable, "-m", "detic.cli", "region", "--channel", CH],
                         capture_output=True, text=True)
    assert res.returncode == 0 and '"vertices"' in res.stdout
