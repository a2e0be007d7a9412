from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from bitwist import cli
from bitwist.cfrac import MultiplierFunction as MF
from bitwist.cfrac import ProjectiveFraction as P


def call(*argv: str) -> tuple[int, str]:
    cfg = cli.parse_args(list(argv))
    buf = io.StringIO()
    code = cli.run(cfg, buf)
    return code, buf.getvalue()


def call_json(*argv: str) -> tuple[int, dict]:
    code, out = call(*argv, "--format", "json")
    return code, json.loads(out)


def test_parse_args_examples():
    cfg = cli.parse_args(["homology", "-m", "-1,1", "--n", "2..5"])
    assert cfg.multipliers == MF((-1,), (1,))
    assert cfg.n_values == (2, 3, 4, 5)
    assert cfg.format == "text" and cfg.route == "q"
    assert cli.parse_args(["realize", "-3/2"]).fraction == P(-3, 2)
    assert cli.parse_args(["table", "-m", "1,1"]).n_values == tuple(range(1, 13))
    assert cli.parse_args(["verify", "--quick", "--only", "1,4"]).only == (1, 4)


@pytest.mark.parametrize(
    "argv",
    [
        ["invariant", "-m", "2,1"],
        ["invariant", "-m", "1,1;1"],
        ["homology", "-m", "1,1", "--n", "0"],
        ["homology", "-m", "1,1", "--n", "5..2"],
        ["order"],
        ["order", "--fibonacci", "5", "--sieradski", "3"],
        ["order", "-m", "1,1", "--n", "2..3"],
        ["order", "--fibonacci", "5", "--n", "2"],
        ["present", "-m", "1,1", "--n", "2..3"],
        ["realize", "4/0/1"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert cli.main(argv) == cli.EXIT_USAGE
    capsys.readouterr()


def test_invariant_output():
    code, doc = call_json("invariant", "-m", "-1,1")
    assert code == 0
    assert doc["command"] == "invariant"
    assert doc["input"] == {"lat": [-1], "lon": [1]}
    assert doc["result"]["fraction"] == "-3/2"
    assert doc["result"]["cf_terms"] == [-2, 2]
    assert doc["paper_refs"]


def test_period_output():
    code, out = call("period", "-m", "-1,1")
    assert code == 0 and "period 6" in out
    _, doc = call_json("period", "-m", "1,1")
    assert doc["result"]["period"] is None
    assert doc["result"]["coefficients"] == [1, -3, 1]


def test_order_outputs():
    code, doc = call_json("order", "--fibonacci", "5", "--max-cosets", "10000")
    assert code == 0 and doc["result"]["order"] == 11
    code, doc = call_json("order", "--sieradski", "3")
    assert code == 0 and doc["result"]["order"] == 8
    code, doc = call_json("order", "--sieradski", "6", "--max-cosets", "20000")
    assert code == cli.EXIT_EXCEEDED
    assert doc["result"]["exceeded"] and doc["result"]["order"] is None


def test_order_bound_from_environment(monkeypatch):
    monkeypatch.setenv(cli.MAX_COSETS_ENV, "300")
    assert cli.parse_args(["order", "--sieradski", "3"]).max_cosets == 300
    code, doc = call_json("order", "--sieradski", "6")
    assert code == cli.EXIT_EXCEEDED and doc["input"]["max_cosets"] == 300
    # an explicit flag wins
    assert cli.parse_args(["order", "--sieradski", "3", "--max-cosets", "50"]).max_cosets == 50


def test_table_json_mod_six():
    code, doc = call_json("table", "-m", "-1,1", "--n", "1..12")
    assert code == 0
    orders = [row["order"] for row in doc["result"]["rows"]]
    assert orders == [1, 3, 4, 3, 1, 0] * 2
    assert doc["result"]["rows"][5]["homology"] == {"free_rank": 2, "torsion": []}


def test_table_tsv():
    _, out = call("table", "-m", "-1,1", "--n", "1..3", "--format", "tsv")
    assert out.splitlines() == ["n\tH1\torder", "1\t0\t1", "2\tZ/3\t3", "3\tZ/2 + Z/2\t4"]


def test_table_parallel_is_identical():
    a = call("table", "-m", "1,1;-1,2", "--n", "1..8")
    b = call("table", "-m", "1,1;-1,2", "--n", "1..8", "--jobs", "2")
    assert a == b


def test_homology_routes_agree():
    _, q = call_json("homology", "-m", "1,1;1,-1", "--n", "1..6")
    _, pres = call_json("homology", "-m", "1,1;1,-1", "--n", "1..6", "--route", "presentation")
    assert q["result"] == pres["result"]


def test_present_output():
    code, doc = call_json("present", "-m", "-1,1", "--n", "3")
    assert code == 0
    assert doc["result"]["generators"] == 3
    assert len(doc["result"]["relators"]) == 3


def test_realize_outputs():
    code, doc = call_json("realize", "5/2")
    assert code == 0
    assert doc["result"]["multiplier_functions"] == ["-1,-1", "1,1"]
    assert doc["result"]["unique"] is False
    assert call("realize", "3/2")[0] == 0


@pytest.mark.parametrize("frac", ["1/2", "4/3", "1/0"])
def test_realize_not_a_knot(frac, capsys):
    assert call("realize", frac)[0] == cli.EXIT_NOT_A_KNOT
    assert "bitwist:" in capsys.readouterr().err


def test_surgery_reduce_output():
    code, doc = call_json("surgery-reduce", "-m", "-1,1", "--trace")
    assert code == 0
    assert doc["result"]["tangle_terms"] == [-2, 2]
    assert doc["result"]["fraction"] == "-3/2"
    assert len(doc["result"]["trace"]["moves"]) == 3
    code, doc = call_json("surgery-reduce", "-m", "1,0;1,0")
    assert code == 0 and doc["result"]["unknot"] and doc["result"]["fraction"] is None


def test_text_trace_lists_moves():
    _, out = call("surgery-reduce", "-m", "1,1", "--trace")
    assert "M0: twist" in out and "O0: twist" in out


def test_output_is_deterministic():
    assert call("table", "-m", "1,2;-1,1", "--format", "json") == call("table", "-m", "1,2;-1,1", "--format", "json")


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    code, out = call("invariant", "-m", "1,1", "--format", "json", "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["result"]["fraction"] == "5/2"


def test_verify_quick_subset(capsys):
    code, doc = call_json("verify", "--quick", "--only", "1,4")
    assert code == 0 and doc["result"]["passed"]
    assert [c["number"] for c in doc["result"]["criteria"]] == [1, 4]
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bitwist", "invariant", "-m", "1,1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "invariant 5/2"
