#!/usr/bin/env python3
"""Drive the whole pipeline on one dataset: structural stats, percolation
scan, analytic predictors, the headline simulation, and both threshold
sweeps (with and without the strong-link cutoff). Output lands in per-stage
subdirectories of --out as plot-ready CSV/JSON.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from assocnet.cli import main as cli


def run(stage: str, argv: list[str]) -> None:
    print(f"== {stage}: assocnet {' '.join(argv)}", flush=True)
    code = cli(argv)
    if code != 0:
        sys.exit(f"{stage} failed with exit code {code}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graph", required=True, help="edge-list TSV")
    ap.add_argument("--rats", required=True, help="problem CSV")
    ap.add_argument("--out", type=Path, default=Path("pipeline_out"))
    ap.add_argument("--runs", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument(
        "--tau-grid", default="0:0.1:0.005", help="threshold grid for the sweeps"
    )
    args = ap.parse_args()

    g, r = str(args.graph), str(args.rats)
    sim_common = [
        "--graph", g, "--rats", r,
        "--runs", str(args.runs), "--seed", str(args.seed),
        "--workers", str(args.workers),
    ]
    run("stats", ["stats", "--graph", g, "--out", str(args.out / "stats")])
    run("percolation", ["percolation", "--graph", g, "--out", str(args.out / "percolation")])
    run("predict", ["predict", "--graph", g, "--rats", r, "--out", str(args.out / "predict")])
    run("simulate", ["simulate", *sim_common, "--out", str(args.out / "simulate")])
    run(
        "tau sweep",
        ["simulate", *sim_common, "--sweep", "tau", "--tau", args.tau_grid,
         "--out", str(args.out / "sweep_tau")],
    )
    run(
        "wmax sweep",
        ["simulate", *sim_common, "--sweep", "wmax", "--tau", args.tau_grid,
         "--out", str(args.out / "sweep_wmax")],
    )
    print(f"done; results under {args.out}")


if __name__ == "__main__":
    main()
