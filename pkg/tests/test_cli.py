import csv
import io
import json
import subprocess
import sys

import pytest

from seedselect.cli import BENCH_COLUMNS, dumps, main


@pytest.fixture
def star_file(tmp_path):
    p = tmp_path / "star.txt"
    p.write_text("0 1\n0 2\n0 3\n")
    return str(p)


@pytest.fixture
def half_path_file(tmp_path):
    p = tmp_path / "path.txt"
    p.write_text("0 1 0.5\n1 2 0.5\n")
    return str(p)


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


STAR_TEGC = ["solve", "--algo", "tegc", "--eta", "3", "--alpha", "0.2", "--sigma", "0.0667", "--gamma", "0.0667",
             "--delta", "0.2", "--seed", "9", "--threads", "1", "--eval-sims", "2000"]


def test_solve_record(star_file):
    code, out, _ = run(STAR_TEGC + ["--graph", star_file])
    assert code == 0
    rec = json.loads(out)
    assert rec["solution"]["seed_labels"] == [0]
    assert rec["evaluation"]["mean"] == 4.0 and rec["evaluation"]["feasible"]
    assert rec["config"]["seed"] == 9 and rec["config"]["algorithm"] == "tegc"
    assert rec["graph_stats"]["n"] == 4 and rec["graph_stats"]["max_single_spread"] == 4.0
    assert "timing" not in rec


def test_solve_is_byte_identical(star_file):
    assert run(STAR_TEGC + ["--graph", star_file])[1] == run(STAR_TEGC + ["--graph", star_file])[1]


def test_json_round_trip(star_file):
    _, out, _ = run(STAR_TEGC + ["--graph", star_file])
    assert dumps(json.loads(out)) == out


def test_timing_is_opt_in(star_file):
    _, out, _ = run(STAR_TEGC + ["--graph", star_file, "--timing"])
    assert set(json.loads(out)["timing"]) == {"wall_time", "started", "finished"}


def test_csv_format(star_file):
    code, out, _ = run(STAR_TEGC + ["--graph", star_file, "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1 and rows[0]["seeds"] == "0"


def test_uniform_only_algorithm_with_random_costs(star_file):
    code, _, err = run(["solve", "--graph", star_file, "--algo", "aauc", "--eta", "3", "--costs", "random:1"])
    assert code == 1 and "uniform" in err


def test_missing_eta(star_file):
    code, _, err = run(["solve", "--graph", star_file, "--algo", "bcgc"])
    assert code == 1 and "eta" in err


@pytest.mark.parametrize("flags, param", [
    (["--alpha", "1.5"], "alpha"),
    (["--sigma", "0.1", "--gamma", "0.15"], "sigma"),
    (["--eta", "4"], "eta"),
    (["--costs", "zipf"], "costs"),
    (["--mu-mode", "exp:oops"], "mu_mode"),
])
def test_domain_errors_name_the_parameter(star_file, flags, param):
    argv = ["solve", "--graph", star_file, "--algo", "bcgc", "--eta", "3"] + flags
    code, _, err = run(argv)
    assert code == 1 and param in err


def test_unknown_flag(star_file):
    assert run(["solve", "--graph", star_file, "--algo", "bcgc", "--eta", "3", "--bogus"])[0] == 1


def test_bad_graph(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\nx y\n")
    code, _, err = run(["solve", "--graph", str(bad), "--algo", "bcgc", "--eta", "1"])
    assert code == 1 and "line 2" in err
    assert run(["solve", "--graph", str(tmp_path / "nope.txt"), "--algo", "bcgc", "--eta", "1"])[0] == 1


def test_flagged_infeasible_exits_2(star_file):
    code, out, _ = run(["solve", "--graph", star_file, "--algo", "aauc", "--eta", "3.95", "--eval-sims", "100"])
    assert code == 2
    assert json.loads(out)["solution"]["infeasible"]


def test_evaluation_shortfall_exits_2(star_file, monkeypatch):
    import seedselect.cli as cli
    monkeypatch.setattr(cli, "simulate_spread", lambda *a, **k: (1.0, 0.0))
    code, out, _ = run(STAR_TEGC + ["--graph", star_file])
    rec = json.loads(out)
    assert code == 2
    assert not rec["solution"]["infeasible"] and not rec["evaluation"]["feasible"]


def test_oracle_optimum_star(star_file):
    code, out, _ = run(["oracle", "--graph", star_file, "--mode", "optimum", "--eta", "3"])
    assert code == 0 and json.loads(out) == {"mode": "optimum", "eta": 3.0, "seeds": [0], "cost": 1.0}


def test_oracle_spread_half_path(half_path_file):
    code, out, _ = run(["oracle", "--graph", half_path_file, "--weighting", "explicit", "--mode", "spread",
                        "--seeds", "0"])
    assert code == 0 and json.loads(out)["spread"] == 1.75


def test_oracle_limit(tmp_path):
    p = tmp_path / "chain.txt"
    p.write_text("".join(f"{i} {i + 1}\n" for i in range(29)))
    code, _, err = run(["oracle", "--graph", str(p), "--mode", "spread", "--seeds", "0"])
    assert code == 1 and "max_nodes" in err


def test_oracle_optimum_needs_eta(star_file):
    assert run(["oracle", "--graph", star_file, "--mode", "optimum"])[0] == 1


def test_bench_rows(star_file):
    code, out, _ = run(["bench", "--graph", star_file, "--algo", "bcgc,tegc", "--eta-list", "2,3",
                        "--repeats", "10", "--eval-sims", "200", "--delta", "0.2"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert tuple(rows[0]) == BENCH_COLUMNS
    for algo in ("bcgc", "tegc"):
        for eta in ("2", "3"):
            cell = [r for r in rows if r["algorithm"] == algo and r["eta"] == eta]
            assert sum(r["row"] == "detail" for r in cell) == 10
            assert sum(r["row"] == "aggregate" for r in cell) == 1
            for r in cell:
                if r["row"] == "detail" and r["status"] == "ok":
                    assert float(r["normalized_is"]) >= 1


def test_bench_timeout_rows(star_file):
    code, out, _ = run(["bench", "--graph", star_file, "--algo", "bcgc", "--eta-list", "3", "--repeats", "2",
                        "--time-limit-min", "-1"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["status"] for r in rows] == ["timeout", "timeout", "0/2"]


def test_bench_rejects_unknown_algorithm(star_file):
    assert run(["bench", "--graph", star_file, "--algo", "imm", "--eta-list", "3"])[0] == 1


def test_console_entry_point(star_file):
    p = subprocess.run([sys.executable, "-m", "seedselect", "oracle", "--graph", star_file, "--mode", "spread",
                        "--seeds", "0"], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["spread"] == 4.0
