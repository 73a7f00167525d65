import json

import pytest

from assocnet.cli import main, parse_grid, parse_list
from assocnet.errors import ValidationError


def run(argv):
    return main([str(a) for a in argv])


class TestGridParsing:
    def test_three_part(self):
        assert parse_grid("0:0.1:0.05") == [0.0, 0.05, 0.1]

    def test_single_value(self):
        assert parse_grid("20") == [20.0]

    def test_inclusive_endpoint(self):
        vals = parse_grid("0:0.1:0.005")
        assert len(vals) == 21
        assert vals[-1] == 0.1

    @pytest.mark.parametrize("bad", ["", "1:2", "a:b:c", "0:1:-0.1", "1:0:0.1", "0:1:0"])
    def test_invalid(self, bad):
        with pytest.raises(ValidationError):
            parse_grid(bad)

    def test_list(self):
        assert parse_list("0,0.5,1") == [0.0, 0.5, 1.0]
        with pytest.raises(ValidationError):
            parse_list("a,b")
        with pytest.raises(ValidationError):
            parse_list("")


class TestStatsCommand:
    def test_writes_outputs(self, t1_files, tmp_path, capsys):
        out = tmp_path / "out"
        assert run(["stats", "--graph", t1_files[0], "--out", out]) == 0
        payload = json.loads((out / "stats.json").read_text())
        assert payload["node_count"] == 4
        assert payload["mean_degree"] == 1.0
        assert payload["manifest"]["subcommand"] == "stats"
        assert payload["manifest"]["tool_version"]
        assert "sha256" in payload["manifest"]["inputs"]["graph"]
        assert payload["ingest"]["edges"] == 4
        for name, header in [
            ("degree_in.csv", "degree,count"),
            ("degree_out.csv", "degree,count"),
            ("weight_cdf.csv", "weight,cumulative_fraction"),
        ]:
            lines = (out / name).read_text().splitlines()
            assert lines[0] == header
            assert len(lines) > 1
        assert (out / "manifest.json").exists()

    def test_missing_file_exit_2(self, tmp_path, capsys):
        code = run(["stats", "--graph", tmp_path / "nope.tsv", "--out", tmp_path])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_malformed_file_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.tsv"
        bad.write_text("a\tb\n", encoding="utf-8")
        assert run(["stats", "--graph", bad, "--out", tmp_path]) == 2


class TestPercolationCommand:
    def test_three_cycle(self, tmp_path):
        g = tmp_path / "cycle.tsv"
        g.write_text("a\tb\t0.5\nb\tc\t0.5\nc\ta\t0.5\n", encoding="utf-8")
        out = tmp_path / "out"
        assert run(
            ["percolation", "--graph", g, "--cutoffs", "0.4:0.6:0.2", "--out", out]
        ) == 0
        lines = (out / "percolation.csv").read_text().splitlines()
        assert lines[0] == "w_cut,largest_scc_fraction"
        assert lines[1] == "0.4,1.0"
        assert lines[2].startswith("0.6,0.333")

    def test_bad_grid_exit_3(self, t1_files, tmp_path, capsys):
        code = run(
            ["percolation", "--graph", t1_files[0], "--cutoffs", "", "--out", tmp_path]
        )
        assert code == 3

    def test_default_grid(self, t1_files, tmp_path):
        out = tmp_path / "out"
        assert run(["percolation", "--graph", t1_files[0], "--out", out]) == 0
        lines = (out / "percolation.csv").read_text().splitlines()
        assert len(lines) == 42  # header + 0:0.2:0.005


class TestPredictCommand:
    def test_t1_predictors(self, t1_files, tmp_path):
        out = tmp_path / "out"
        code = run(
            ["predict", "--graph", t1_files[0], "--rats", t1_files[1], "--out", out]
        )
        assert code == 0
        lines = (out / "predictors.csv").read_text().splitlines()
        assert lines[0] == "alpha,p0,p_0,p_05,p_1,inverse_weight,hardness,flags"
        cells = lines[1].split(",")
        assert cells[0] == "0"
        assert float(cells[1]) == pytest.approx(0.5)  # p0
        assert float(cells[2]) == float(cells[1])  # p_0 equals p0 exactly
        assert float(cells[4]) == pytest.approx(1.0, abs=1e-10)  # p_1
        assert float(cells[5]) == 0.0
        payload = json.loads((out / "correlations.json").read_text())
        assert payload["manifest"]["subcommand"] == "predict"
        assert (out / "scatter.csv").read_text().splitlines()[0] == (
            "alpha,predictor,value,hardness"
        )

    def test_lambda_zero_only(self, t1_files, tmp_path):
        out = tmp_path / "out"
        code = run(
            [
                "predict", "--graph", t1_files[0], "--rats", t1_files[1],
                "--lambda", "0", "--out", out,
            ]
        )
        assert code == 0
        header = (out / "predictors.csv").read_text().splitlines()[0]
        assert header == "alpha,p0,p_0,inverse_weight,hardness,flags"

    def test_bad_lambda_exit_3(self, t1_files, tmp_path):
        code = run(
            [
                "predict", "--graph", t1_files[0], "--rats", t1_files[1],
                "--lambda", "2.0", "--out", tmp_path,
            ]
        )
        assert code == 3

    def test_bad_hardness_exit_3(self, t1_files, tmp_path):
        rats = tmp_path / "r.csv"
        rats.write_text("s1,s2,s3,response,hardness\na,b,c,r,1.7\n", encoding="utf-8")
        code = run(
            ["predict", "--graph", t1_files[0], "--rats", rats, "--out", tmp_path]
        )
        assert code == 3


def _sim_files(tmp_path):
    """A few problems over a network where solving is uncertain."""
    g = tmp_path / "net.tsv"
    rows = []
    words = [f"n{i}" for i in range(12)]
    import numpy as np

    rng = np.random.default_rng(0)
    pairs = set()
    while len(pairs) < 60:
        s, t = rng.integers(12, size=2)
        if s != t:
            pairs.add((int(s), int(t)))
    for s, t in sorted(pairs):
        rows.append(f"{words[s]}\t{words[t]}\t{round(float(rng.uniform(0.05, 0.9)), 3)}")
    g.write_text("\n".join(rows) + "\n", encoding="utf-8")
    rats = tmp_path / "rats.csv"
    rats.write_text(
        "s1,s2,s3,response,hardness\n"
        "n0,n1,n2,n3,0.7\n"
        "n4,n5,n6,n7,0.45\n"
        "n8,n9,n10,n11,0.2\n",
        encoding="utf-8",
    )
    return g, rats


class TestSimulateCommand:
    def test_default_run_outputs(self, tmp_path):
        g, rats = _sim_files(tmp_path)
        out = tmp_path / "out"
        code = run(
            [
                "simulate", "--graph", g, "--rats", rats,
                "--runs", 200, "--seed", 5, "--out", out,
            ]
        )
        assert code == 0
        acc_lines = (out / "accuracy.csv").read_text().splitlines()
        assert acc_lines[0].startswith("param,value,alpha,hardness,category,accuracy")
        assert len(acc_lines) == 4  # header + 3 problems x 1 value
        len_lines = (out / "lengths.csv").read_text().splitlines()
        assert len_lines[0] == "param,value,category,accuracy,mean_solving_length"
        payload = json.loads((out / "correlations.json").read_text())
        assert payload["reports"][0]["param"] == "t_max"
        assert payload["reports"][0]["value"] == 20.0

    def test_byte_identical_across_workers_and_seeds(self, tmp_path):
        g, rats = _sim_files(tmp_path)
        outs = []
        for name, workers in (("a", 1), ("b", 2)):
            out = tmp_path / name
            code = run(
                [
                    "simulate", "--graph", g, "--rats", rats,
                    "--runs", 300, "--seed", 11, "--workers", workers,
                    "--sweep", "tau", "--tau", "0:0.2:0.1", "--out", out,
                ]
            )
            assert code == 0
            outs.append(out)
        for name in ("accuracy.csv", "lengths.csv"):
            assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()

    def test_different_seed_changes_output(self, tmp_path):
        g, rats = _sim_files(tmp_path)
        payloads = []
        for seed in (1, 2):
            out = tmp_path / f"s{seed}"
            run(
                [
                    "simulate", "--graph", g, "--rats", rats,
                    "--runs", 150, "--seed", seed, "--out", out,
                ]
            )
            payloads.append((out / "accuracy.csv").read_bytes())
        assert payloads[0] != payloads[1]

    def test_sweep_tmax(self, tmp_path):
        g, rats = _sim_files(tmp_path)
        out = tmp_path / "out"
        code = run(
            [
                "simulate", "--graph", g, "--rats", rats, "--runs", 100,
                "--sweep", "tmax", "--tmax", "5:20:5", "--out", out,
            ]
        )
        assert code == 0
        lines = (out / "accuracy.csv").read_text().splitlines()
        assert len(lines) == 1 + 3 * 4

    def test_sweep_wmax_default_cutoff(self, tmp_path):
        g, rats = _sim_files(tmp_path)
        out = tmp_path / "out"
        code = run(
            [
                "simulate", "--graph", g, "--rats", rats, "--runs", 50,
                "--sweep", "wmax", "--tau", "0:0.04:0.02", "--out", out,
            ]
        )
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["parameters"]["wmax"] == 0.05

    @pytest.mark.parametrize(
        "extra",
        [
            ["--sweep", "tau", "--tau", "0.1:0:0.01"],  # descending
            ["--sweep", "tau", "--tau", ""],  # empty
            ["--sweep", "tmax", "--tmax", "0:1:0.5"],  # non-integer budgets
            ["--tau", "0:0.1:0.05"],  # grid without a sweep
        ],
    )
    def test_invalid_sweep_specs_exit_3(self, tmp_path, extra):
        g, rats = _sim_files(tmp_path)
        code = run(
            ["simulate", "--graph", g, "--rats", rats, "--runs", 10,
             "--out", tmp_path, *extra]
        )
        assert code == 3

    def test_bad_runs_exit_3(self, tmp_path):
        g, rats = _sim_files(tmp_path)
        code = run(
            ["simulate", "--graph", g, "--rats", rats, "--runs", 0, "--out", tmp_path]
        )
        assert code == 3

    def test_interpreter_path_matches_compiled(self, tmp_path):
        # same bytes with the kernel compilation disabled entirely
        import os
        import subprocess
        import sys

        g, rats = _sim_files(tmp_path)
        argv = [
            "simulate", "--graph", str(g), "--rats", str(rats),
            "--runs", "100", "--seed", "3", "--tmax", "5",
        ]
        out_fast = tmp_path / "fast"
        assert run([*argv, "--out", out_fast]) == 0
        out_slow = tmp_path / "slow"
        proc = subprocess.run(
            [sys.executable, "-m", "assocnet", *argv, "--out", str(out_slow)],
            env={**os.environ, "ASSOCNET_NO_NUMBA": "1"},
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr
        for name in ("accuracy.csv", "lengths.csv"):
            assert (out_fast / name).read_bytes() == (out_slow / name).read_bytes()


class TestModuleEntry:
    def test_version_flag(self):
        import subprocess
        import sys

        proc = subprocess.run(
            [sys.executable, "-m", "assocnet", "--version"], capture_output=True
        )
        assert proc.returncode == 0
        assert proc.stdout.decode().strip()
