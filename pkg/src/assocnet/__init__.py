"""Free-association network analysis and three-cue search modelling."""

__version__ = "0.1.0"

from .errors import ConvergenceError, ParseError, ValidationError
from .graph import (
    GraphStats,
    WeightedDigraph,
    degree_histogram,
    degree_tail_slope,
    filter_edges,
    global_stats,
    percolation_curve,
    strongly_connected_components,
    weight_cdf,
)
from .ingest import (
    GraphLoadReport,
    RatDataset,
    RatProblem,
    category_for,
    load_graph,
    load_rats,
    save_graph,
)
from .firstpassage import (
    AbsorbingWeights,
    PredictorResult,
    chain_probability,
    first_passage,
    first_passage_vector,
    inverse_weight,
    one_step_probability,
    predictor_table,
)
from .search import (
    AccuracyReport,
    SearchConfig,
    SearchOutcome,
    SweepResult,
    accuracy,
    run_single,
    run_uniforms,
    sweep_tau,
    sweep_tmax,
    sweep_wmax,
)
from .stats import (
    CorrelationReport,
    correlate_predictors,
    linear_fit,
    pearson,
)

__all__ = [
    "__version__",
    "ConvergenceError",
    "ParseError",
    "ValidationError",
    "GraphStats",
    "WeightedDigraph",
    "degree_histogram",
    "degree_tail_slope",
    "filter_edges",
    "global_stats",
    "percolation_curve",
    "strongly_connected_components",
    "weight_cdf",
    "GraphLoadReport",
    "RatDataset",
    "RatProblem",
    "category_for",
    "load_graph",
    "load_rats",
    "save_graph",
    "AbsorbingWeights",
    "PredictorResult",
    "chain_probability",
    "first_passage",
    "first_passage_vector",
    "inverse_weight",
    "one_step_probability",
    "predictor_table",
    "AccuracyReport",
    "SearchConfig",
    "SearchOutcome",
    "SweepResult",
    "accuracy",
    "run_single",
    "run_uniforms",
    "sweep_tau",
    "sweep_tmax",
    "sweep_wmax",
    "CorrelationReport",
    "correlate_predictors",
    "linear_fit",
    "pearson",
]
