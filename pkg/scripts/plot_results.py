#!/usr/bin/env python3
"""Render figures from a pipeline output directory (see run_pipeline.py).

Reads only the CSV artifacts, so it can run anywhere the outputs were
copied. Requires matplotlib, which is intentionally not a package
dependency; rendering is cosmetic and sits outside the tested pipeline.
"""

from __future__ import annotations

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_csv(path: Path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def maybe(path: Path) -> list[dict] | None:
    return read_csv(path) if path.exists() else None


def plot_degrees(out: Path, fig_dir: Path) -> None:
    fig, ax = plt.subplots(figsize=(5, 4))
    for name, color in (("degree_in.csv", "tab:blue"), ("degree_out.csv", "tab:orange")):
        rows = maybe(out / "stats" / name)
        if not rows:
            return
        ks = [int(r["degree"]) for r in rows if int(r["degree"]) > 0]
        cs = [int(r["count"]) for r in rows if int(r["degree"]) > 0]
        ax.loglog(ks, cs, ".", ms=4, color=color, label=name.split(".")[0].split("_")[1])
    ax.set_xlabel("degree k")
    ax.set_ylabel("number of nodes")
    ax.legend()
    fig.tight_layout()
    fig.savefig(fig_dir / "degree_distributions.png", dpi=150)
    plt.close(fig)


def plot_weight_cdf(out: Path, fig_dir: Path) -> None:
    rows = maybe(out / "stats" / "weight_cdf.csv")
    if not rows:
        return
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.semilogx(
        [float(r["weight"]) for r in rows],
        [float(r["cumulative_fraction"]) for r in rows],
        drawstyle="steps-post",
    )
    ax.set_xlabel("link weight w")
    ax.set_ylabel("P(weight <= w)")
    fig.tight_layout()
    fig.savefig(fig_dir / "weight_cdf.png", dpi=150)
    plt.close(fig)


def plot_percolation(out: Path, fig_dir: Path) -> None:
    rows = maybe(out / "percolation" / "percolation.csv")
    if not rows:
        return
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(
        [float(r["w_cut"]) for r in rows],
        [float(r["largest_scc_fraction"]) for r in rows],
        "o-", ms=3,
    )
    ax.set_xlabel("weight cutoff")
    ax.set_ylabel("largest SCC fraction")
    fig.tight_layout()
    fig.savefig(fig_dir / "percolation.png", dpi=150)
    plt.close(fig)


def plot_predictor_scatter(out: Path, fig_dir: Path) -> None:
    rows = maybe(out / "predict" / "scatter.csv")
    if not rows:
        return
    predictors = sorted({r["predictor"] for r in rows})
    fig, axes = plt.subplots(1, len(predictors), figsize=(3.2 * len(predictors), 3.2))
    if len(predictors) == 1:
        axes = [axes]
    for ax, name in zip(axes, predictors):
        xs = [float(r["value"]) for r in rows if r["predictor"] == name]
        ys = [float(r["hardness"]) for r in rows if r["predictor"] == name]
        ax.plot(xs, ys, "o", ms=3, alpha=0.6)
        ax.set_xlabel(name)
        ax.set_ylabel("hardness")
    fig.tight_layout()
    fig.savefig(fig_dir / "predictor_scatter.png", dpi=150)
    plt.close(fig)


def plot_accuracy_scatter(out: Path, fig_dir: Path) -> None:
    rows = maybe(out / "simulate" / "accuracy.csv")
    if not rows:
        return
    fig, ax = plt.subplots(figsize=(4.5, 4))
    colors = {"easy": "tab:green", "medium": "tab:orange", "hard": "tab:red"}
    for cat, color in colors.items():
        xs = [float(r["accuracy"]) for r in rows if r["category"] == cat]
        ys = [float(r["hardness"]) for r in rows if r["category"] == cat]
        if xs:
            ax.plot(xs, ys, "o", ms=4, alpha=0.7, color=color, label=cat)
    ax.set_xlabel("model accuracy")
    ax.set_ylabel("empirical hardness")
    ax.legend()
    fig.tight_layout()
    fig.savefig(fig_dir / "accuracy_vs_hardness.png", dpi=150)
    plt.close(fig)


def plot_sweeps(out: Path, fig_dir: Path) -> None:
    for stage in ("sweep_tau", "sweep_wmax", "simulate"):
        rows = maybe(out / stage / "lengths.csv")
        if not rows or len({r["value"] for r in rows}) < 2:
            continue
        param = rows[0]["param"]
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
        for cat in ("easy", "medium", "hard", "all"):
            sub = [r for r in rows if r["category"] == cat]
            if not sub:
                continue
            xs = [float(r["value"]) for r in sub]
            ax1.plot(xs, [float(r["accuracy"]) for r in sub], "o-", ms=3, label=cat)
            ax2.plot(
                xs, [float(r["mean_solving_length"]) for r in sub], "o-", ms=3, label=cat
            )
        ax1.set_xlabel(param)
        ax1.set_ylabel("accuracy")
        ax2.set_xlabel(param)
        ax2.set_ylabel("mean solving length")
        ax1.legend()
        fig.tight_layout()
        fig.savefig(fig_dir / f"{stage}_curves.png", dpi=150)
        plt.close(fig)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--results", type=Path, default=Path("pipeline_out"),
                    help="directory written by run_pipeline.py")
    ap.add_argument("--out", type=Path, default=None,
                    help="figure directory (default: <results>/figures)")
    args = ap.parse_args()
    fig_dir = args.out or args.results / "figures"
    fig_dir.mkdir(parents=True, exist_ok=True)
    plot_degrees(args.results, fig_dir)
    plot_weight_cdf(args.results, fig_dir)
    plot_percolation(args.results, fig_dir)
    plot_predictor_scatter(args.results, fig_dir)
    plot_accuracy_scatter(args.results, fig_dir)
    plot_sweeps(args.results, fig_dir)
    made = sorted(p.name for p in fig_dir.glob("*.png"))
    print(f"wrote {len(made)} figures to {fig_dir}: {', '.join(made)}")


if __name__ == "__main__":
    main()
