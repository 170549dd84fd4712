import json
import subprocess
import sys

import pytest

from guevertex import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_moments_symbolic_golden(capsys):
    code, out = run_cli(capsys, "moments", "--k", "2", "--symbolic")
    assert code == 0
    assert json.loads(out) == {
        "config": {"command": "moments", "k": 2, "mode": "symbolic"},
        "moment": {
            "vars": ["nu"],
            "cutoff": 2,
            "terms": [
                {"exp": [0], "num": "2", "den": "1"},
                {"exp": [2], "num": "1", "den": "1"},
            ],
        },
    }


def test_moments_numeric(capsys):
    code, out = run_cli(capsys, "moments", "--k", "2", "--N", "5")
    doc = json.loads(out)
    assert code == 0
    assert doc["moment"] == {"num": "51", "den": "25"}
    assert doc["float_approx"] == pytest.approx(2.04)


def test_genus_csv_golden(capsys):
    code, out = run_cli(capsys, "genus", "--degrees", "3,3")
    assert code == 0
    assert out.splitlines() == [
        "# command = genus",
        "# degrees = 3 3",
        "# budget = 654729075",
        "k_list,genus,count",
        "3 3,0,12",
        "3 3,1,3",
    ]


def test_triple_sum_document(capsys):
    code, out = run_cli(capsys, "triple-sum", "--k1", "1", "--k2", "1", "--k3", "1")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"config", "value_num", "value_den", "float_approx"}
    assert doc["float_approx"] == pytest.approx(
        int(doc["value_num"]) / int(doc["value_den"])
    )


def test_intersect_one_golden(capsys):
    code, out = run_cli(capsys, "intersect", "one", "--gmax", "2")
    assert code == 0
    assert json.loads(out)["rows"] == [
        {"tau": [1], "genus": 1, "num": "1", "den": "24"},
        {"tau": [4], "genus": 2, "num": "1", "den": "1152"},
    ]


def test_asympt_compare_csv(capsys):
    code, out = run_cli(capsys, "asympt", "compare", "--ray", "1.0", "--N-list", "27,64")
    lines = out.splitlines()
    assert code == 0
    assert "k,N,exact,asymptotic,rel_err" in lines
    data = [line for line in lines if line and not line.startswith("#")][1:]
    assert [row.split(",")[:2] for row in data] == [["9", "27"], ["16", "64"]]


def test_mc_is_reproducible(capsys):
    args = ("mc", "--k", "4", "--N", "12", "--samples", "200", "--seed", "3")
    code1, out1 = run_cli(capsys, *args)
    code2, out2 = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["samples"] == 200
    assert doc["config"]["seed"] == 3


def test_density_writes_csv_and_summary(tmp_path, capsys):
    target = tmp_path / "density.csv"
    code, out = run_cli(
        capsys,
        "density", "--N", "20", "--samples", "100", "--bins", "10",
        "--csv", str(target),
    )
    assert code == 0
    summary = json.loads(out)
    assert summary["csv"] == str(target)
    lines = target.read_text().splitlines()
    header_at = lines.index("bin_center,density,semicircle,abs_dev")
    assert all(line.startswith("# ") for line in lines[:header_at])
    assert len(lines) - header_at - 1 == 10


def test_airy_check_pass(capsys):
    code, out = run_cli(capsys, "airy-check", "--s", "1.0")
    doc = json.loads(out)
    assert code == 0
    assert doc["ok"] is True
    assert doc["rel_err"] < 1e-6


def test_usage_exit_code(capsys):
    assert run_cli(capsys, "moments", "--k", "-3")[0] == 2
    assert run_cli(capsys, "connected", "--degrees", "2,x")[0] == 2


def test_budget_exit_code(monkeypatch, capsys):
    monkeypatch.setenv("RMT_BUDGET", "100")
    assert run_cli(capsys, "connected", "--degrees", "6,6")[0] == 3


def test_check_failure_exit_code(capsys):
    code, out = run_cli(capsys, "airy-check", "--s", "1.0", "--tol", "1e-30")
    assert code == 4
    assert json.loads(out)["ok"] is False


def test_unknown_command_exit_code(capsys):
    assert cli.main(["no-such-command"]) == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "guevertex", "moments", "--k", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["moment"]["terms"] == [
        {"exp": [0], "num": "1", "den": "1"}
    ]
