from __future__ import annotations

import json
import subprocess
import sys

import pytest

from weylsplit.cli import main
from weylsplit.higgs import higgs_to_sigma, jordan_nilpotent
from weylsplit.qweyl import QWeylElement


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out else None), err


def test_normalize_word(capsys):
    code, data, _ = run_json(capsys, "normalize", "--json", '{"p": 3, "word": "dx"}')
    assert code == 0
    assert data["pretty"] == "q·xδ + 1"
    assert QWeylElement.from_json(data) == QWeylElement.d(3) * QWeylElement.x(3)


def test_normalize_product(capsys):
    d = QWeylElement.d(5).to_json()
    x = QWeylElement.x(5).to_json()
    payload = json.dumps({"p": 5, "product": [d, d, x]})
    code, data, _ = run_json(capsys, "normalize", "--json", payload)
    assert code == 0
    d5, x5 = QWeylElement.d(5), QWeylElement.x(5)
    assert QWeylElement.from_json(data) == d5 * d5 * x5


def test_normalize_reads_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO('{"p": 2, "word": "xx"}'))
    code, data, _ = run_json(capsys, "normalize")
    assert code == 0 and data["pretty"] == "x^2"


def test_commute(capsys):
    payload = json.dumps({"left": {"p": 3, "word": "ddd"}, "right": {"p": 3, "word": "x"}})
    code, data, _ = run_json(capsys, "commute", "--json", payload)
    assert code == 0
    assert data["terms"] == []


def test_center_check(capsys):
    code, data, _ = run_json(capsys, "center-check", "--json", '{"p": 2, "word": "xxdd"}')
    assert code == 0
    assert data["is_central"] and data["is_centralizing_Rx"]
    code, data, _ = run_json(capsys, "center-check", "--json", '{"p": 2, "word": "d"}')
    assert code == 0
    assert not data["is_central"] and not data["is_centralizing_Rx"]


def test_reduce_modp(capsys):
    code, data, _ = run_json(capsys, "reduce-modp", "--json", '{"p": 3, "word": "dx"}')
    assert code == 0
    assert sorted((t["x"], t["d"], t["c"]) for t in data["terms"]) == [(0, 0, 1), (1, 1, 1)]


def test_split_and_lift(capsys):
    code, data, _ = run_json(capsys, "split-verify", "--p", "2,3", "--trunc", "2")
    assert code == 0
    assert {c["check"] for c in data["certificates"]} == {
        "verify_weyl_relation",
        "verify_mod_I_isomorphism",
    }
    code, data, _ = run_json(capsys, "lift-verify", "--p", "2", "--trunc", "2")
    assert code == 0


def test_split_verify_mutation(capsys):
    code, data, _ = run_json(capsys, "split-verify", "--p", "3", "--mutate-d")
    assert code == 1
    failed = [c["check"] for c in data["certificates"] if c["status"] == "fail"]
    assert failed == ["verify_weyl_relation"]


def test_phi(capsys):
    code, data, _ = run_json(capsys, "phi", "--p", "2", "--trunc", "3")
    assert code == 0
    assert data["values"]["2"]["phi_dp_pretty"] == "ξ - x^2ξ^2"


def test_verify_azumaya(capsys):
    code, data, _ = run_json(capsys, "verify-azumaya", "--p", "2", "--mode", "p2-explicit")
    assert code == 0
    code, data, _ = run_json(capsys, "verify-azumaya", "--p", "2,3", "--mode", "mod-p")
    assert code == 0
    assert [c["params"]["p"] for c in data["certificates"]] == [2, 3]
    code, _, err = run(capsys, "verify-azumaya", "--p", "3", "--mode", "p2-explicit")
    assert code == 2 and "requires --p 2" in err


def test_higgs_commands(capsys, tmp_path):
    H = jordan_nilpotent(2, [2])
    code, data, _ = run_json(capsys, "higgs-to-sigma", "--json", json.dumps(H.to_json()))
    assert code == 0
    assert data["roundtrip_equal"]
    assert data["roundtrip_hash"] == data["input_hash"]
    assert data["module"] == higgs_to_sigma(H).to_json()

    out = tmp_path / "higgs.json"
    code, stdout, _ = run(capsys, "sigma-to-higgs", "--json", json.dumps(data["module"]), "--out", str(out))
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["module"]["theta"] == H.to_json()["theta"]

    code, data, _ = run_json(capsys, "roundtrip-check", "--json", json.dumps(H.to_json()))
    assert code == 0
    assert data["certificates"][0]["status"] == "pass"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-all", "--p", "4"],
        ["split-verify", "--p", "17"],
        ["split-verify", "--p", "two"],
        ["normalize", "--json", "{not json"],
        ["normalize", "--json", '{"p": 4, "word": "dx"}'],
        ["normalize", "--json", '{"p": 3, "word": "dy"}'],
        ["higgs-to-sigma", "--json", '{"p": 2, "rank": 1, "theta": [[{"0": [1]}]]}'],
        ["phi", "--trunc", "0"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def _cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "weylsplit", *argv], capture_output=True, text=True, check=False
    )


def test_verify_all_exit_code_and_determinism():
    first = _cli("verify-all", "--p", "2,3,5", "--seed", "7")
    second = _cli("verify-all", "--p", "2,3,5", "--seed", "7")
    assert first.returncode == 0, first.stderr
    assert first.stdout == second.stdout
    data = json.loads(first.stdout)
    assert all(c["status"] == "pass" for c in data["certificates"])
    names = [(c["check"], c["params"]["p"]) for c in data["certificates"]]
    assert names == sorted(names)


def test_verify_all_rejects_non_prime():
    res = _cli("verify-all", "--p", "4")
    assert res.returncode == 2
    assert res.stdout == ""


def test_verify_all_mutated_D():
    res = _cli("verify-all", "--p", "2", "--mutate-d")
    assert res.returncode == 1
    failed = {c["check"] for c in json.loads(res.stdout)["certificates"] if c["status"] == "fail"}
    assert "verify_weyl_relation" in failed
