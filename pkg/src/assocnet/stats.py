"""Pearson correlation and ordinary least squares for predictor reporting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError


def _paired(x: Sequence[float], y: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.ndim != 1 or ya.ndim != 1 or xa.size != ya.size:
        raise ValidationError("series must be 1-D and equally long")
    if xa.size < 2:
        raise ValidationError("need at least 2 points")
    return xa, ya


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation; errors out when either series is constant."""
    xa, ya = _paired(x, y)
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    sx = float(np.sqrt((dx * dx).sum()))
    sy = float(np.sqrt((dy * dy).sum()))
    if sx == 0.0 or sy == 0.0:
        raise ValidationError("correlation undefined for a constant series")
    return float((dx * dy).sum() / (sx * sy))


def linear_fit(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """Least-squares (slope, intercept) of y on x."""
    xa, ya = _paired(x, y)
    dx = xa - xa.mean()
    sxx = float((dx * dx).sum())
    if sxx == 0.0:
        raise ValidationError("linear fit undefined for constant x")
    slope = float((dx * (ya - ya.mean())).sum() / sxx)
    return slope, float(ya.mean() - slope * xa.mean())


@dataclass
class CorrelationReport:
    """One predictor series paired with empirical hardness.

    The regression explains hardness (hardness is the dependent variable).
    Rows whose predictor value is nan (flagged upstream) are dropped; n is
    the pair count actually used.
    """

    predictor: str
    alphas: list[int]
    values: list[float]
    hardness: list[float]
    pearson_rho: float
    slope: float
    intercept: float
    n: int
    fit: str = "hardness_on_predictor"

    def to_dict(self) -> dict:
        return {
            "predictor": self.predictor,
            "pearson_rho": self.pearson_rho,
            "slope": self.slope,
            "intercept": self.intercept,
            "n": self.n,
            "fit": self.fit,
        }


def correlation_report(
    name: str,
    alphas: Sequence[int],
    values: Sequence[float],
    hardness: Sequence[float],
) -> CorrelationReport:
    va = np.asarray(values, dtype=np.float64)
    ha = np.asarray(hardness, dtype=np.float64)
    if va.size != ha.size or len(alphas) != va.size:
        raise ValidationError(f"{name}: predictor and hardness series misaligned")
    keep = np.isfinite(va)
    va, ha = va[keep], ha[keep]
    kept_alphas = [a for a, k in zip(alphas, keep) if k]
    rho = pearson(va, ha)
    slope, intercept = linear_fit(va, ha)
    return CorrelationReport(
        predictor=name,
        alphas=kept_alphas,
        values=va.tolist(),
        hardness=ha.tolist(),
        pearson_rho=rho,
        slope=slope,
        intercept=intercept,
        n=int(va.size),
    )


def correlate_predictors(
    predictors,
    dataset,
    accuracy: Sequence[float] | None = None,
) -> list[CorrelationReport]:
    """Reports for p0, every damping value, the reverse-weight mean, and
    (when given) the simulator accuracy, each against hardness."""
    from .firstpassage import lambda_label

    problems = dataset.problems
    if len(predictors) != len(problems) or any(
        r.index != p.index for r, p in zip(predictors, problems)
    ):
        raise ValidationError("predictor table and dataset misaligned")
    alphas = [p.index for p in problems]
    hardness = [p.hardness for p in problems]
    reports = [
        correlation_report("p0", alphas, [r.p0 for r in predictors], hardness)
    ]
    lams = list(predictors[0].p_lambda) if predictors else []
    for lam in lams:
        reports.append(
            correlation_report(
                lambda_label(lam),
                alphas,
                [r.p_lambda[lam] for r in predictors],
                hardness,
            )
        )
    reports.append(
        correlation_report(
            "inverse_weight",
            alphas,
            [r.inverse_weight for r in predictors],
            hardness,
        )
    )
    if accuracy is not None:
        if len(accuracy) != len(problems):
            raise ValidationError("accuracy series and dataset misaligned")
        reports.append(correlation_report("accuracy", alphas, accuracy, hardness))
    return reports


def write_scatter(series, path) -> None:
    """Stacked plot-ready pairs: alpha, predictor, value, hardness.

    series: iterable of (name, alphas, values, hardness) quadruples, e.g.
    built from CorrelationReport fields. nan values are skipped.
    """
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("alpha,predictor,value,hardness\n")
        for name, alphas, values, hardness in series:
            for a, v, h in zip(alphas, values, hardness):
                if np.isnan(v):
                    continue
                fh.write(f"{a},{name},{float(v)!r},{float(h)!r}\n")


def scatter_series(reports: Sequence[CorrelationReport]):
    return [(r.predictor, r.alphas, r.values, r.hardness) for r in reports]
