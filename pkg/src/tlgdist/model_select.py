"""Model comparison: the one-sample Kolmogorov-Smirnov statistic, Akaike
information criteria, and a ranked comparison table across fitted models.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .estimation import Dataset, FitResult, _model_cdf
from .exceptions import DataError

__all__ = ["ComparisonRow", "ks_statistic", "aic_aicc", "compare_models"]

_CRITERIA = ("ks", "neg2ll", "aic", "aicc")


@dataclass(frozen=True)
class ComparisonRow:
    """Per-model selection criteria plus the model's rank under each one
    (rank 1 is best, i.e. smallest)."""

    model: str
    ks: float
    neg2ll: float
    aic: float
    aicc: float
    k: int
    ranks: dict[str, int]


def ks_statistic(model_cdf, data: Dataset) -> float:
    """Two-sided one-sample Kolmogorov-Smirnov distance.

    ``model_cdf`` is called once on the sorted sample; the statistic is
    max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n), comparing the fitted cdf
    against both the upper and lower empirical steps.
    """
    xs = data.values
    n = data.n
    f = np.asarray(model_cdf(xs), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def aic_aicc(loglik: float, k: int, n: int) -> tuple[float, float]:
    """AIC = 2k - 2*loglik and its small-sample correction
    AICC = AIC + 2k(k+1)/(n-k-1).

    Raises
    ------
    DataError
        If ``n <= k + 1``, where the correction term blows up.
    """
    if n <= k + 1:
        raise DataError(f"AICC needs n > k+1, got n={n}, k={k}")
    aic = 2.0 * k - 2.0 * loglik
    return aic, aic + 2.0 * k * (k + 1.0) / (n - k - 1.0)


def compare_models(fits: list[FitResult], data: Dataset) -> list[ComparisonRow]:
    """Build the selection table for fits of the same dataset.

    Returns one row per fit, sorted by AIC ascending, each annotated with
    its rank under K-S, -2*loglik, AIC, and AICC (ties share the smaller
    rank).  The -2*loglik column reuses the loglik stored in each fit, so
    the table cannot drift from the fit results.
    """
    measured = []
    for fit in fits:
        ks = ks_statistic(lambda xs: _model_cdf(fit.model, fit.estimates, xs), data)
        aic, aicc = aic_aicc(fit.loglik, fit.k, data.n)
        measured.append(
            dict(model=fit.model, ks=ks, neg2ll=-2.0 * fit.loglik,
                 aic=aic, aicc=aicc, k=fit.k)
        )

    rows = []
    for entry in measured:
        ranks = {
            crit: 1 + sum(other[crit] < entry[crit] for other in measured)
            for crit in _CRITERIA
        }
        rows.append(ComparisonRow(ranks=ranks, **entry))
    rows.sort(key=lambda row: row.aic)
    return rows
