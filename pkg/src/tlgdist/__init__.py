"""Transmuted Lindley-geometric distribution toolkit.

Densities, distribution functions, hazards, and quantiles for the Lindley,
Lindley-geometric, and transmuted Lindley-geometric families; a generic
quadratic rank transmutation combinator; random variate generation; series
moments and the mgf; order statistics; maximum-likelihood and (weighted)
least-squares fitting with observed-information inference; and model
selection by K-S distance and information criteria.  The ``tlg`` console
script exposes the same functionality from the shell.
"""

from .datasets import bank_waiting_times, ingest_csv
from .distributions import (
    LgParams,
    LindleyParams,
    TlgParams,
    lg_cdf,
    lg_pdf,
    lindley_cdf,
    lindley_pdf,
    tlg_cdf,
    tlg_cumhazard,
    tlg_hazard,
    tlg_pdf,
    tlg_quantile,
    tlg_sf,
)
from .estimation import (
    MODELS,
    Dataset,
    FitResult,
    OptimizerOptions,
    confidence_intervals,
    fit_lse,
    fit_mle,
    fit_wlse,
    loglik_lg,
    loglik_lindley,
    loglik_tlg,
    observed_information,
    score_tlg,
)
from .exceptions import ConvergenceError, DataError
from .model_select import ComparisonRow, aic_aicc, compare_models, ks_statistic
from .moments import MomentSet, SeriesConfig, mgf, raw_moment, skewness_kurtosis
from .order_stats import OrderSpec, order_stat_moment, order_stat_pdf, order_stat_shape
from .sampling import (
    RandomnessSource,
    lg_base,
    lindley_base,
    make_rng,
    sample_lg,
    sample_lindley,
    sample_tlg,
)
from .transmute import (
    BaseDistribution,
    TransmutedDistribution,
    transmuted_cdf,
    transmuted_pdf,
    transmuted_sample,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "LindleyParams",
    "LgParams",
    "TlgParams",
    "lindley_pdf",
    "lindley_cdf",
    "lg_pdf",
    "lg_cdf",
    "tlg_pdf",
    "tlg_cdf",
    "tlg_sf",
    "tlg_hazard",
    "tlg_cumhazard",
    "tlg_quantile",
    "BaseDistribution",
    "TransmutedDistribution",
    "transmuted_cdf",
    "transmuted_pdf",
    "transmuted_sample",
    "RandomnessSource",
    "make_rng",
    "sample_lindley",
    "sample_lg",
    "sample_tlg",
    "lindley_base",
    "lg_base",
    "SeriesConfig",
    "MomentSet",
    "raw_moment",
    "mgf",
    "skewness_kurtosis",
    "OrderSpec",
    "order_stat_pdf",
    "order_stat_moment",
    "order_stat_shape",
    "Dataset",
    "OptimizerOptions",
    "FitResult",
    "MODELS",
    "loglik_lindley",
    "loglik_lg",
    "loglik_tlg",
    "score_tlg",
    "fit_mle",
    "fit_lse",
    "fit_wlse",
    "observed_information",
    "confidence_intervals",
    "ComparisonRow",
    "ks_statistic",
    "aic_aicc",
    "compare_models",
    "ingest_csv",
    "bank_waiting_times",
    "ConvergenceError",
    "DataError",
]
