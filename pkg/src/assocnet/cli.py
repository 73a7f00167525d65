"""Command-line pipeline producing plot-ready CSV/JSON artifacts.

Subcommands: stats (structural summary + degree/weight distributions),
percolation (largest-SCC fraction vs weight cutoff), predict (analytic
predictors + correlations), simulate (Monte Carlo search, optionally swept
over t_max or tau). Exit codes: 0 ok, 2 I/O or parse failure, 3 invalid
parameter or validation failure, 4 non-convergence aborting a whole run.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .errors import ConvergenceError, ParseError, ValidationError
from . import firstpassage, graph, ingest, search, stats

EXIT_OK = 0
EXIT_IO = 2
EXIT_VALIDATION = 3
EXIT_CONVERGENCE = 4

DEFAULT_CUTOFF_GRID = "0:0.2:0.005"


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict
    seed: int | None
    inputs: dict
    tool_version: str
    duration_s: float

    def to_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "parameters": self.parameters,
            "seed": self.seed,
            "inputs": self.inputs,
            "tool_version": self.tool_version,
            "duration_s": self.duration_s,
        }


def _digest(path: str) -> dict:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return {"path": str(path), "sha256": h.hexdigest()}


def parse_grid(spec: str, what: str = "grid") -> list[float]:
    """`start:stop:step` inclusive of both ends (or a single number)."""
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) != 3:
            raise ValueError
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ValidationError(f"bad {what} {spec!r}; expected start:stop:step") from None
    if step <= 0 or stop < start:
        raise ValidationError(f"bad {what} {spec!r}: need step > 0 and stop >= start")
    count = int((stop - start) / step + 1e-9) + 1
    return [round(start + i * step, 12) for i in range(count)]


def parse_list(spec: str, what: str = "list") -> list[float]:
    try:
        values = [float(p) for p in spec.split(",") if p.strip() != ""]
    except ValueError:
        raise ValidationError(f"bad {what} {spec!r}; expected comma-separated numbers") from None
    if not values:
        raise ValidationError(f"empty {what}")
    return values


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_cell(v) for v in row) + "\n")


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, allow_nan=True)
        fh.write("\n")


def _finish(out_dir: Path, manifest: RunManifest) -> None:
    _write_json(out_dir / "manifest.json", manifest.to_dict())


def cmd_stats(args) -> int:
    started = time.monotonic()
    g, report = ingest.load_graph(args.graph)
    summary = graph.global_stats(g)
    hist_in = graph.degree_histogram(g, "in")
    hist_out = graph.degree_histogram(g, "out")
    cdf = graph.weight_cdf(g)
    try:
        tail_slope = graph.degree_tail_slope(hist_in, k_min=50)
    except ValidationError:
        tail_slope = None
    out_dir = _out_dir(args)
    _write_csv(out_dir / "degree_in.csv", ["degree", "count"], hist_in)
    _write_csv(out_dir / "degree_out.csv", ["degree", "count"], hist_out)
    _write_csv(out_dir / "weight_cdf.csv", ["weight", "cumulative_fraction"], cdf)
    manifest = _manifest(args, "stats", {"graph": args.graph}, started)
    _write_json(
        out_dir / "stats.json",
        {
            "manifest": manifest.to_dict(),
            "node_count": summary.node_count,
            "mean_degree": summary.mean_degree,
            "diameter": summary.diameter,
            "transitivity": summary.transitivity,
            "scc_fraction": summary.scc_fraction,
            "in_degree_tail_slope": tail_slope,
            "ingest": report.to_dict(),
        },
    )
    _finish(out_dir, manifest)
    return EXIT_OK


def cmd_percolation(args) -> int:
    started = time.monotonic()
    cutoffs = parse_grid(args.cutoffs, "cutoff grid")
    g, _ = ingest.load_graph(args.graph)
    curve = graph.percolation_curve(g, cutoffs)
    out_dir = _out_dir(args)
    _write_csv(out_dir / "percolation.csv", ["w_cut", "largest_scc_fraction"], curve)
    manifest = _manifest(
        args, "percolation", {"graph": args.graph, "cutoffs": args.cutoffs}, started
    )
    _finish(out_dir, manifest)
    return EXIT_OK


def cmd_predict(args) -> int:
    started = time.monotonic()
    lambdas = parse_list(args.lambdas, "lambda list")
    for lam in lambdas:
        if not 0.0 <= lam <= 1.0:
            raise ValidationError(f"lambda {lam} outside [0, 1]")
    g, _ = ingest.load_graph(args.graph)
    dataset = ingest.load_rats(args.rats, g)
    table = firstpassage.predictor_table(g, dataset.problems, lambdas)
    flagged = [r for r in table if r.flags]
    for r in flagged:
        print(
            f"warning: problem {r.index}: {'; '.join(r.flags)}", file=sys.stderr
        )
    out_dir = _out_dir(args)
    lam_cols = [firstpassage.lambda_label(lam) for lam in lambdas]
    _write_csv(
        out_dir / "predictors.csv",
        ["alpha", "p0", *lam_cols, "inverse_weight", "hardness", "flags"],
        (
            [
                r.index,
                r.p0,
                *[r.p_lambda[lam] for lam in lambdas],
                r.inverse_weight,
                r.hardness,
                ";".join(r.flags),
            ]
            for r in table
        ),
    )
    alphas = [r.index for r in table]
    hardness = [p.hardness for p in dataset.problems]
    series = [("p0", alphas, [r.p0 for r in table], hardness)]
    for lam in lambdas:
        series.append(
            (
                firstpassage.lambda_label(lam),
                alphas,
                [r.p_lambda[lam] for r in table],
                hardness,
            )
        )
    series.append(("inverse_weight", alphas, [r.inverse_weight for r in table], hardness))
    reports = []
    for name, a, vals, h in series:
        try:
            reports.append(stats.correlation_report(name, a, vals, h).to_dict())
        except ValidationError as exc:
            reports.append({"predictor": name, "error": str(exc)})
    stats.write_scatter(series, out_dir / "scatter.csv")
    manifest = _manifest(
        args,
        "predict",
        {"graph": args.graph, "rats": args.rats, "lambda": args.lambdas},
        started,
    )
    _write_json(
        out_dir / "correlations.json",
        {
            "manifest": manifest.to_dict(),
            "reports": reports,
            "excluded_problems": [
                {"line": e.lineno, "words": list(e.words), "reason": e.reason}
                for e in dataset.excluded
            ],
        },
    )
    _finish(out_dir, manifest)
    return EXIT_OK


def cmd_simulate(args) -> int:
    started = time.monotonic()
    g, _ = ingest.load_graph(args.graph)
    dataset = ingest.load_rats(args.rats, g)
    problems = dataset.problems
    sweep_kind = args.sweep
    w_max = args.wmax
    if w_max is None:
        w_max = 0.05 if sweep_kind == "wmax" else 1.0
    base = search.SearchConfig(
        t_max=_single_int(args.tmax, "tmax") if sweep_kind != "tmax" else 20,
        tau=_single_float(args.tau, "tau") if sweep_kind not in ("tau", "wmax") else 0.0,
        w_max=w_max,
        n_runs=args.runs,
        seed=args.seed,
    )
    if sweep_kind is None:
        result = search.sweep_tmax(
            g, problems, base, [base.t_max], workers=args.workers
        )
    elif sweep_kind == "tmax":
        values = [int(v) for v in parse_grid(args.tmax, "tmax grid")]
        if any(v != iv for v, iv in zip(parse_grid(args.tmax, "tmax grid"), values)):
            raise ValidationError("tmax sweep values must be integers")
        result = search.sweep_tmax(g, problems, base, values, workers=args.workers)
    elif sweep_kind in ("tau", "wmax"):
        values = parse_grid(args.tau, "tau grid")
        fn = search.sweep_tau if sweep_kind == "tau" else search.sweep_wmax
        result = fn(g, problems, base, values, workers=args.workers)
    else:  # pragma: no cover - argparse restricts choices
        raise ValidationError(f"unknown sweep {sweep_kind!r}")
    out_dir = _out_dir(args)
    _write_sweep_csvs(out_dir, result)
    reports = []
    for j, value in enumerate(result.values):
        acc = result.accuracy[:, j].tolist()
        try:
            rep = stats.correlation_report(
                "accuracy", result.alphas, acc, result.hardness
            )
            entry = rep.to_dict()
        except ValidationError as exc:
            entry = {"predictor": "accuracy", "error": str(exc)}
        entry["param"] = result.param
        entry["value"] = value
        reports.append(entry)
    manifest = _manifest(
        args,
        "simulate",
        {
            "graph": args.graph,
            "rats": args.rats,
            "sweep": sweep_kind,
            "tmax": args.tmax,
            "tau": args.tau,
            "wmax": w_max,
            "runs": args.runs,
            "workers": args.workers,
        },
        started,
    )
    _write_json(
        out_dir / "correlations.json",
        {"manifest": manifest.to_dict(), "reports": reports},
    )
    _finish(out_dir, manifest)
    return EXIT_OK


def _write_sweep_csvs(out_dir: Path, result) -> None:
    lengths = result.problem_mean_length()
    rows = []
    for i, alpha in enumerate(result.alphas):
        for j, value in enumerate(result.values):
            rows.append(
                [
                    result.param,
                    value,
                    alpha,
                    result.hardness[i],
                    result.categories[i],
                    float(result.accuracy[i, j]),
                    int(result.solved[i, j]),
                    int(result.dead_end[i, j]),
                    int(result.exhausted[i, j]),
                    float(lengths[i, j]),
                ]
            )
    _write_csv(
        out_dir / "accuracy.csv",
        [
            "param",
            "value",
            "alpha",
            "hardness",
            "category",
            "accuracy",
            "solved_runs",
            "dead_end_runs",
            "exhausted_runs",
            "mean_solved_steps",
        ],
        rows,
    )
    cat_acc = result.category_accuracy()
    cat_len = result.category_mean_length()
    cat_rows = []
    for cat in cat_acc:
        for j, value in enumerate(result.values):
            cat_rows.append(
                [
                    result.param,
                    value,
                    cat,
                    float(cat_acc[cat][j]),
                    float(cat_len[cat][j]),
                ]
            )
    _write_csv(
        out_dir / "lengths.csv",
        ["param", "value", "category", "accuracy", "mean_solving_length"],
        cat_rows,
    )


def _single_int(spec: str, what: str) -> int:
    values = parse_grid(spec, what)
    if len(values) != 1 or values[0] != int(values[0]):
        raise ValidationError(f"{what} must be a single integer without --sweep {what}")
    return int(values[0])


def _single_float(spec: str, what: str) -> float:
    values = parse_grid(spec, what)
    if len(values) != 1:
        raise ValidationError(f"{what} must be a single value without a sweep over it")
    return values[0]


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _manifest(args, subcommand: str, params: dict, started: float) -> RunManifest:
    inputs = {}
    for key in ("graph", "rats"):
        path = getattr(args, key, None)
        if path is not None:
            inputs[key] = _digest(path)
    return RunManifest(
        subcommand=subcommand,
        parameters={k: v for k, v in params.items() if v is not None},
        seed=getattr(args, "seed", None),
        inputs=inputs,
        tool_version=__version__,
        duration_s=round(time.monotonic() - started, 3),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="assocnet",
        description="Free-association network analysis and three-cue search models.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="structural summary and distributions")
    p_stats.add_argument("--graph", required=True, help="edge-list TSV")
    p_stats.add_argument("--out", default=".", help="output directory")
    p_stats.set_defaults(fn=cmd_stats)

    p_perc = sub.add_parser("percolation", help="largest-SCC fraction vs weight cutoff")
    p_perc.add_argument("--graph", required=True)
    p_perc.add_argument(
        "--cutoffs", default=DEFAULT_CUTOFF_GRID, help="grid start:stop:step"
    )
    p_perc.add_argument("--out", default=".")
    p_perc.set_defaults(fn=cmd_percolation)

    p_pred = sub.add_parser("predict", help="analytic predictors vs hardness")
    p_pred.add_argument("--graph", required=True)
    p_pred.add_argument("--rats", required=True, help="problem CSV")
    p_pred.add_argument(
        "--lambda", dest="lambdas", default="0,0.5,1", help="comma-separated dampings"
    )
    p_pred.add_argument("--out", default=".")
    p_pred.set_defaults(fn=cmd_predict)

    p_sim = sub.add_parser("simulate", help="Monte Carlo search accuracy")
    p_sim.add_argument("--graph", required=True)
    p_sim.add_argument("--rats", required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--runs", type=int, default=10_000)
    p_sim.add_argument("--tmax", default="20", help="attempt budget (grid with --sweep tmax)")
    p_sim.add_argument("--tau", default="0", help="threshold (grid with --sweep tau/wmax)")
    p_sim.add_argument(
        "--wmax", type=float, default=None, help="strong-link cutoff (default 1; 0.05 under --sweep wmax)"
    )
    p_sim.add_argument("--sweep", choices=("tmax", "tau", "wmax"), default=None)
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.add_argument("--out", default=".")
    p_sim.set_defaults(fn=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValidationError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


def entrypoint() -> None:  # console-script shim
    sys.exit(main())
