#!/usr/bin/env python3
"""Generate a synthetic association network plus a matching problem file.

Not real norms: a preferential-attachment digraph with row-normalised
weights, and planted three-cue problems whose nominal hardness tracks the
direct stimulus->response weights with noise. Useful for smoke-testing the
CLI end to end when the real datasets are not at hand.
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np


def build_network(n_nodes: int, mean_out: float, rng: np.random.Generator):
    attach = np.ones(n_nodes)
    edges: dict[tuple[int, int], float] = {}
    for s in range(n_nodes):
        deg = min(n_nodes - 1, 1 + rng.poisson(mean_out))
        p = attach / attach.sum()
        targets = rng.choice(n_nodes, size=deg, replace=False, p=p)
        raw = rng.exponential(1.0, size=deg)
        weights = raw / raw.sum()
        for t, w in zip(targets, weights):
            t = int(t)
            if t == s:
                continue
            edges[(s, t)] = round(max(0.01, min(1.0, float(w))), 4)
            attach[t] += 1.0
    return edges


def plant_problems(edges, n_nodes: int, n_problems: int, rng: np.random.Generator):
    into: dict[int, list[tuple[int, float]]] = {}
    for (s, t), w in edges.items():
        into.setdefault(t, []).append((s, w))
    candidates = [t for t, srcs in into.items() if len(srcs) >= 3]
    rng.shuffle(candidates)
    problems = []
    for resp in candidates[:n_problems]:
        srcs = into[resp]
        idx = rng.choice(len(srcs), size=3, replace=False)
        stim = [srcs[i] for i in idx]
        mean_w = sum(w for _, w in stim) / 3.0
        hardness = float(np.clip(2.5 * mean_w + rng.normal(0, 0.12), 0.0, 1.0))
        problems.append(([s for s, _ in stim], resp, round(hardness, 3)))
    return problems


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", type=int, default=400)
    ap.add_argument("--mean-out", type=float, default=12.0)
    ap.add_argument("--problems", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("demo_data"))
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    edges = build_network(args.nodes, args.mean_out, rng)
    problems = plant_problems(edges, args.nodes, args.problems, rng)

    args.out.mkdir(parents=True, exist_ok=True)
    graph_path = args.out / "network.tsv"
    with open(graph_path, "w", encoding="utf-8") as fh:
        fh.write("# synthetic demo network: source\ttarget\tweight\n")
        for (s, t), w in sorted(edges.items()):
            fh.write(f"n{s:04d}\tn{t:04d}\t{w}\n")
    rats_path = args.out / "problems.csv"
    with open(rats_path, "w", encoding="utf-8") as fh:
        fh.write("s1,s2,s3,response,hardness\n")
        for stim, resp, h in problems:
            fh.write(
                ",".join(f"n{s:04d}" for s in stim) + f",n{resp:04d},{h}\n"
            )
    print(f"wrote {graph_path} ({len(edges)} edges) and {rats_path} ({len(problems)} problems)")


if __name__ == "__main__":
    main()
