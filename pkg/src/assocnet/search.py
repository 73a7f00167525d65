"""Stimulus-attracted spreading-activation search and its parameter sweeps.

A run keeps the three stimuli permanently active plus one floating guess.
Each step scores every not-yet-checked out-neighbour of the active set by its
summed incoming weight (edges above the w_max cutoff removed, scores below
the tau threshold removed), samples one neighbour proportionally to score,
and either finishes (response found / dead end) or swaps the guess.
"""

from __future__ import annotations

import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _engine
from .errors import ValidationError
from .graph import WeightedDigraph, filter_edges
from .ingest import CATEGORIES, RatProblem

FAILURE_NAMES = ("none", "exhausted_tmax", "dead_end")


@dataclass(frozen=True)
class SearchConfig:
    t_max: int = 20
    tau: float = 0.0
    w_max: float = 1.0
    n_runs: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if not (isinstance(self.t_max, int) and 0 <= self.t_max < _engine.MAX_T):
            raise ValidationError(f"t_max must be an integer in [0, {_engine.MAX_T})")
        if self.tau < 0.0:
            raise ValidationError("tau must be >= 0")
        if not 0.0 < self.w_max <= 1.0:
            raise ValidationError("w_max must lie in (0, 1]")
        if not (isinstance(self.n_runs, int) and 1 <= self.n_runs < _engine.MAX_RUNS):
            raise ValidationError("n_runs must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class SearchOutcome:
    solved: bool
    steps: int
    failure_kind: str  # "none" | "exhausted_tmax" | "dead_end"


@dataclass(frozen=True)
class ProblemAccuracy:
    alpha: int
    hardness: float
    category: str
    accuracy: float
    solved_runs: int
    dead_end_runs: int
    exhausted_runs: int
    mean_solved_steps: float  # nan when no run solved


@dataclass
class AccuracyReport:
    config: SearchConfig
    problems: list[ProblemAccuracy]
    category_accuracy: dict[str, float]
    category_mean_length: dict[str, float]

    def accuracies(self) -> list[float]:
        return [p.accuracy for p in self.problems]


@dataclass
class SweepResult:
    """Per-problem counts for each swept parameter value.

    Arrays are (n_problems, n_values); problems keep dataset order.
    """

    param: str  # "t_max" or "tau"
    values: list[float]
    config: SearchConfig
    alphas: list[int]
    hardness: list[float]
    categories: list[str]
    solved: np.ndarray
    dead_end: np.ndarray
    exhausted: np.ndarray
    solved_steps: np.ndarray

    @property
    def accuracy(self) -> np.ndarray:
        return self.solved / self.config.n_runs

    def problem_mean_length(self) -> np.ndarray:
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(self.solved > 0, self.solved_steps / self.solved, np.nan)

    def _category_rows(self, category: str) -> np.ndarray:
        if category == "all":
            return np.arange(len(self.alphas))
        return np.flatnonzero(np.asarray(self.categories) == category)

    def category_accuracy(self) -> dict[str, list[float]]:
        """Mean per-problem accuracy within each category, per value."""
        out = {}
        for cat in (*CATEGORIES, "all"):
            rows = self._category_rows(cat)
            if rows.size == 0:
                continue
            out[cat] = self.accuracy[rows].mean(axis=0).tolist()
        return out

    def category_mean_length(self) -> dict[str, list[float]]:
        """Solving-trajectory length pooled over the solved runs of each
        category's problems (nan where nothing solved)."""
        out = {}
        for cat in (*CATEGORIES, "all"):
            rows = self._category_rows(cat)
            if rows.size == 0:
                continue
            steps = self.solved_steps[rows].sum(axis=0)
            solved = self.solved[rows].sum(axis=0)
            with np.errstate(invalid="ignore", divide="ignore"):
                out[cat] = np.where(solved > 0, steps / solved, np.nan).tolist()
        return out

    def category_sigma(self) -> dict[str, list[float]]:
        """Monte Carlo standard error of each category-accuracy point."""
        n = self.config.n_runs
        out = {}
        acc = self.accuracy
        for cat in (*CATEGORIES, "all"):
            rows = self._category_rows(cat)
            if rows.size == 0:
                continue
            var = (acc[rows] * (1.0 - acc[rows]) / n).sum(axis=0) / rows.size**2
            out[cat] = np.sqrt(var).tolist()
        return out


def run_uniforms(seed: int, problem_index: int, run_index: int, t_max: int) -> np.ndarray:
    """The uniform stream a given run consumes, one value per step."""
    return _engine.uniform_block(seed, problem_index, 1, t_max, first_run=run_index)[0]


def _filtered(g: WeightedDigraph, w_max: float) -> WeightedDigraph:
    return g if w_max >= 1.0 else filter_edges(g, 0.0, w_max)


def run_single(
    g: WeightedDigraph,
    problem: RatProblem,
    config: SearchConfig,
    uniforms: np.ndarray,
) -> SearchOutcome:
    """One search run driven by an explicit uniform stream (see run_uniforms)."""
    uniforms = np.asarray(uniforms, dtype=np.float64).reshape(-1)
    if uniforms.size < config.t_max:
        raise ValidationError(
            f"need {config.t_max} uniforms, got {uniforms.size}"
        )
    gf = _filtered(g, config.w_max)
    ss, kind, steps = _engine.simulate_runs(
        gf.out_ptr,
        gf.out_dst,
        gf.out_wt,
        gf.node_count,
        problem.stimuli,
        problem.response,
        config.tau,
        uniforms[: config.t_max].reshape(1, -1),
    )
    k = int(kind[0])
    return SearchOutcome(
        solved=k == _engine.SOLVED,
        steps=int(steps[0]),
        failure_kind=FAILURE_NAMES[k],
    )


def _task_values(state: dict, alpha: int, stimuli, response: int) -> list[tuple]:
    """(solved, dead_end, exhausted, solved_steps) per swept value for one
    problem. Streams depend only on (seed, alpha, run, step), so the result
    is independent of how tasks are scheduled."""
    ptr, dst, wt = state["ptr"], state["dst"], state["wt"]
    n_nodes = state["n_nodes"]
    n_runs = state["n_runs"]
    seed = state["seed"]
    values = state["values"]
    out = []
    if state["mode"] == "tmax":
        t_top = int(values[-1])
        uniforms = _engine.uniform_block(seed, alpha, n_runs, t_top)
        ss, kind, steps = _engine.simulate_runs(
            ptr, dst, wt, n_nodes, stimuli, response, state["tau"], uniforms
        )
        solved_runs = kind == _engine.SOLVED
        dead_runs = kind == _engine.DEAD_END
        for t in values:
            ok = solved_runs & (ss <= t)
            dead = dead_runs & (steps < t)
            n_ok = int(ok.sum())
            n_dead = int(dead.sum())
            out.append((n_ok, n_dead, n_runs - n_ok - n_dead, int(ss[ok].sum())))
    else:
        uniforms = _engine.uniform_block(seed, alpha, n_runs, state["t_max"])
        for tau in values:
            ss, kind, _ = _engine.simulate_runs(
                ptr, dst, wt, n_nodes, stimuli, response, float(tau), uniforms
            )
            ok = kind == _engine.SOLVED
            out.append(
                (
                    int(ok.sum()),
                    int((kind == _engine.DEAD_END).sum()),
                    int((kind == _engine.EXHAUSTED).sum()),
                    int(ss[ok].sum()),
                )
            )
    return out


_STATE: dict = {}


def _init_state(state: dict) -> None:
    _STATE.clear()
    _STATE.update(state)


def _run_task(task) -> list[tuple]:
    alpha, stimuli, response = task
    return _task_values(_STATE, alpha, stimuli, response)


def _compute(
    g: WeightedDigraph,
    problems: list[RatProblem],
    config: SearchConfig,
    mode: str,
    values: list,
    workers: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    gf = _filtered(g, config.w_max)
    state = {
        "ptr": gf.out_ptr,
        "dst": gf.out_dst,
        "wt": gf.out_wt,
        "n_nodes": gf.node_count,
        "n_runs": config.n_runs,
        "seed": config.seed,
        "tau": config.tau,
        "t_max": config.t_max,
        "mode": mode,
        "values": values,
    }
    tasks = [(p.index, p.stimuli, p.response) for p in problems]
    if workers <= 1 or len(tasks) <= 1:
        rows = [_task_values(state, *task) for task in tasks]
    else:
        ctx = mp.get_context("fork" if "fork" in mp.get_all_start_methods() else None)
        with ProcessPoolExecutor(
            max_workers=workers,
            mp_context=ctx,
            initializer=_init_state,
            initargs=(state,),
        ) as pool:
            rows = list(pool.map(_run_task, tasks))
    shape = (len(problems), len(values))
    arrays = [np.zeros(shape, dtype=np.int64) for _ in range(4)]
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            for k in range(4):
                arrays[k][i, j] = cell[k]
    return tuple(arrays)


def accuracy(
    g: WeightedDigraph,
    problems: list[RatProblem],
    config: SearchConfig,
    workers: int = 1,
) -> AccuracyReport:
    """Fraction of solved runs per problem plus category aggregates,
    deterministic for a fixed (config, seed) at any worker count."""
    sweep = sweep_tmax(g, problems, config, [config.t_max], workers=workers)
    lengths = sweep.problem_mean_length()[:, 0]
    rows = [
        ProblemAccuracy(
            alpha=p.index,
            hardness=p.hardness,
            category=p.category,
            accuracy=float(sweep.accuracy[i, 0]),
            solved_runs=int(sweep.solved[i, 0]),
            dead_end_runs=int(sweep.dead_end[i, 0]),
            exhausted_runs=int(sweep.exhausted[i, 0]),
            mean_solved_steps=float(lengths[i]),
        )
        for i, p in enumerate(problems)
    ]
    return AccuracyReport(
        config=config,
        problems=rows,
        category_accuracy={k: v[0] for k, v in sweep.category_accuracy().items()},
        category_mean_length={k: v[0] for k, v in sweep.category_mean_length().items()},
    )


def _check_values(values, what: str, integral: bool = False) -> list:
    vals = list(values)
    if not vals:
        raise ValidationError(f"empty {what} grid")
    if any(b < a for a, b in zip(vals, vals[1:])):
        raise ValidationError(f"{what} values must be ascending")
    if any(v < 0 for v in vals):
        raise ValidationError(f"{what} values must be >= 0")
    if integral and not all(isinstance(v, (int, np.integer)) for v in vals):
        raise ValidationError(f"{what} values must be integers")
    return vals


def sweep_tmax(
    g: WeightedDigraph,
    problems: list[RatProblem],
    config: SearchConfig,
    t_values,
    workers: int = 1,
) -> SweepResult:
    """Accuracy/length curves over attempt budgets. Simulated once at the
    largest budget; smaller budgets are derived from recorded success steps,
    which matches a direct simulation at that budget exactly (shared stream
    prefixes)."""
    vals = _check_values(t_values, "t_max", integral=True)
    if vals[-1] >= _engine.MAX_T:
        raise ValidationError(f"t_max must be < {_engine.MAX_T}")
    solved, dead, exh, steps_sum = _compute(g, problems, config, "tmax", vals, workers)
    return SweepResult(
        param="t_max",
        values=[float(v) for v in vals],
        config=config,
        alphas=[p.index for p in problems],
        hardness=[p.hardness for p in problems],
        categories=[p.category for p in problems],
        solved=solved,
        dead_end=dead,
        exhausted=exh,
        solved_steps=steps_sum,
    )


def sweep_tau(
    g: WeightedDigraph,
    problems: list[RatProblem],
    config: SearchConfig,
    tau_values,
    workers: int = 1,
) -> SweepResult:
    """Accuracy and solving-length curves over activation thresholds at the
    config's attempt budget. All points share the per-run uniform streams."""
    vals = [float(v) for v in _check_values(tau_values, "tau")]
    solved, dead, exh, steps_sum = _compute(g, problems, config, "tau", vals, workers)
    return SweepResult(
        param="tau",
        values=vals,
        config=config,
        alphas=[p.index for p in problems],
        hardness=[p.hardness for p in problems],
        categories=[p.category for p in problems],
        solved=solved,
        dead_end=dead,
        exhausted=exh,
        solved_steps=steps_sum,
    )


def sweep_wmax(
    g: WeightedDigraph,
    problems: list[RatProblem],
    config: SearchConfig,
    tau_values,
    workers: int = 1,
) -> SweepResult:
    """Threshold sweep with the strong-link cutoff taken from config.w_max
    (1.0 makes this identical to sweep_tau)."""
    return sweep_tau(g, problems, config, tau_values, workers=workers)
