"""Analytic hardness predictors from the weighted adjacency structure.

`first_passage` sums the weights of all association chains from a source to
a target, geometrically damped by a continuation factor lam, with the
target's out-edges removed so that only the first arrival counts. The
per-problem predictors average it (and the raw direct / reverse weights)
over the three stimuli.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix

from .errors import ConvergenceError, ValidationError
from .graph import WeightedDigraph
from .ingest import RatProblem

DEFAULT_LAMBDAS = (0.0, 0.5, 1.0)
TOLERANCE = 1e-12
MAX_ITER = 10**5


def weight_matrix(g: WeightedDigraph) -> csr_matrix:
    """The graph's weights as a sparse row-operator (row = source node)."""
    n = g.node_count
    return csr_matrix(
        (g.out_wt.copy(), g.out_dst.copy(), g.out_ptr.copy()), shape=(n, n)
    )


class AbsorbingWeights:
    """Weight operator with one node's out-edges removed.

    Zeroing the row of the target makes it absorbing: chains through it are
    not counted again after first arrival. Edges *into* the target keep
    their weights. The row removal is applied inside matvec, so one shared
    sparse matrix serves every target.
    """

    def __init__(self, matrix: csr_matrix, response: int):
        n = matrix.shape[0]
        if not 0 <= response < n:
            raise IndexError(f"node id {response} outside 0..{n - 1}")
        self.matrix = matrix
        self.response = response

    @classmethod
    def from_graph(cls, g: WeightedDigraph, response: int) -> "AbsorbingWeights":
        return cls(weight_matrix(g), response)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.matrix @ v
        out[self.response] = 0.0
        return out

    def entry_weights(self) -> np.ndarray:
        """Column of weights into the response (the length-1 chain terms)."""
        e = np.zeros(self.matrix.shape[0], dtype=np.float64)
        e[self.response] = 1.0
        return self.matvec(e)

    def toarray(self) -> np.ndarray:
        dense = self.matrix.toarray()
        dense[self.response, :] = 0.0
        return dense


def first_passage_vector(
    absorbing: AbsorbingWeights,
    lam: float,
    tol: float = TOLERANCE,
    max_iter: int = MAX_ITER,
) -> np.ndarray:
    """Chain-sum arrival probability from every source simultaneously.

    Fixed point of z <- b + lam * Wminus z, where b holds the direct entry
    weights; equivalently the geometric series sum_{k>=1} lam^(k-1) times
    the k-step chain weights. Converged when successive iterates differ by
    at most tol in the sup norm.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValidationError(f"lam must lie in [0, 1], got {lam}")
    b = absorbing.entry_weights()
    z = np.zeros_like(b)
    residual = np.inf
    for _ in range(max_iter):
        nxt = b + lam * absorbing.matvec(z)
        residual = float(np.max(np.abs(nxt - z))) if z.size else 0.0
        z = nxt
        if residual <= tol:
            return z
    raise ConvergenceError(
        f"first-passage iteration cap {max_iter} reached at lam={lam}", residual
    )


def first_passage(g: WeightedDigraph, s: int, r: int, lam: float) -> float:
    """Damped chain-sum probability of reaching r from s before any revisit
    of r. lam=0 reduces to the direct weight w(s, r)."""
    g._check_id(s)
    g._check_id(r)
    if s == r:
        raise ValidationError("source and target must differ")
    return float(first_passage_vector(AbsorbingWeights.from_graph(g, r), lam)[s])


def one_step_probability(g: WeightedDigraph, problem: RatProblem) -> float:
    """Mean direct stimulus->response weight (absent edges contribute 0)."""
    return sum(g.weight(s, problem.response) for s in problem.stimuli) / 3.0


def chain_probability(g: WeightedDigraph, problem: RatProblem, lam: float) -> float:
    """Mean first-passage probability over the three stimuli."""
    vec = first_passage_vector(AbsorbingWeights.from_graph(g, problem.response), lam)
    return float(sum(vec[s] for s in problem.stimuli) / 3.0)


def inverse_weight(g: WeightedDigraph, problem: RatProblem) -> float:
    """Mean reverse response->stimulus weight (absent edges contribute 0)."""
    return sum(g.weight(problem.response, s) for s in problem.stimuli) / 3.0


def lambda_label(lam: float) -> str:
    """Column label for a damping value: 0 -> p_0, 0.5 -> p_05, 1 -> p_1."""
    return "p_" + format(float(lam), "g").replace(".", "")


@dataclass(frozen=True)
class PredictorResult:
    """Analytic predictor values for one problem."""

    index: int
    p0: float
    p_lambda: dict[float, float]
    inverse_weight: float
    hardness: float
    flags: tuple[str, ...] = ()


def predictor_table(
    g: WeightedDigraph,
    problems: list[RatProblem],
    lambdas=DEFAULT_LAMBDAS,
    tol: float = TOLERANCE,
    max_iter: int = MAX_ITER,
) -> list[PredictorResult]:
    """Per-problem p0, chain probabilities for each damping value, and the
    reverse-weight mean. A chain solve that fails to converge flags the
    value as nan instead of aborting the table."""
    lams = [float(l) for l in lambdas]
    shared = weight_matrix(g)
    out: list[PredictorResult] = []
    for problem in problems:
        absorbing = AbsorbingWeights(shared, problem.response)
        p_lambda: dict[float, float] = {}
        flags: list[str] = []
        for lam in lams:
            try:
                vec = first_passage_vector(absorbing, lam, tol=tol, max_iter=max_iter)
                p_lambda[lam] = float(sum(vec[s] for s in problem.stimuli) / 3.0)
            except ConvergenceError:
                p_lambda[lam] = float("nan")
                flags.append(f"{lambda_label(lam)}:nonconverged")
        out.append(
            PredictorResult(
                index=problem.index,
                p0=one_step_probability(g, problem),
                p_lambda=p_lambda,
                inverse_weight=inverse_weight(g, problem),
                hardness=problem.hardness,
                flags=tuple(flags),
            )
        )
    return out
