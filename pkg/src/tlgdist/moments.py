"""Series evaluation of TLG raw moments and the moment generating function,
plus skewness/kurtosis assembled from the first four raw moments.

Both the r-th raw moment and the mgf reduce to the same double series

    sum_j p^j sum_{i=0}^{j} C(j,i) (theta/(theta+1))^i
        * (1-p) theta^2/(theta+1)
        * ((1+lam)(j+1) I1(i,j) - lam (j+1)(j+2) I2(i,j))

where I1 and I2 are closed-form gamma integrals against exp(-s x) with rates
s = theta(j+1) - t and theta(j+2) - t.  Setting t = 0 and weighting by x^r
gives the moment series; r = 0 with the exponential tilt gives the mgf.
Terms are evaluated through log-gamma so large i never overflows, and the
outer sum stops once two consecutive j-blocks fall below the tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .distributions import TlgParams
from .exceptions import ConvergenceError

__all__ = [
    "SeriesConfig",
    "MomentSet",
    "raw_moment",
    "mgf",
    "skewness_kurtosis",
    "moment_set",
]


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation policy for the moment/mgf series.

    ``max_j`` bounds the outer (geometric) index; ``tol`` is the block
    magnitude below which the series is considered converged.
    """

    max_j: int = 500
    tol: float = 1e-12

    def __post_init__(self) -> None:
        if self.max_j < 1:
            raise ValueError(f"max_j must be at least 1, got {self.max_j!r}")
        if not (np.isfinite(self.tol) and self.tol > 0.0):
            raise ValueError(f"tol must be a positive real, got {self.tol!r}")


DEFAULT_SERIES = SeriesConfig()


@dataclass(frozen=True)
class MomentSet:
    """Raw moments mu1..mu4 with the derived skewness and kurtosis."""

    mu1: float
    mu2: float
    mu3: float
    mu4: float
    skewness: float
    kurtosis: float

    @property
    def variance(self) -> float:
        return self.mu2 - self.mu1**2


def _series_sum(
    theta: float, p: float, lam: float, r: int, t: float, cfg: SeriesConfig
) -> float:
    """Shared double series; r-th moment at t=0, mgf at r=0."""
    log_ratio = np.log(theta / (theta + 1.0))
    log_abs_p = np.log(abs(p)) if p != 0.0 else -np.inf
    sign_p = 1.0 if p >= 0.0 else -1.0
    prefactor = (1.0 - p) * theta**2 / (theta + 1.0)

    total = 0.0
    quiet = 0
    for j in range(cfg.max_j + 1):
        i = np.arange(j + 1, dtype=float)
        # log of C(j,i) * (theta/(theta+1))^i * |p|^j; the j=0 block has no
        # p factor at all, so skip the 0 * (-inf) product there
        log_w = (
            gammaln(j + 1.0) - gammaln(i + 1.0) - gammaln(j - i + 1.0)
            + i * log_ratio
            + (0.0 if j == 0 else j * log_abs_p)
        )
        s1 = theta * (j + 1.0) - t
        s2 = theta * (j + 2.0) - t
        a1 = r + i + 1.0
        a2 = r + i + 2.0
        # weighted gamma integrals: g = w * Gamma(a)/s^a * (1 + a/s)
        g1 = np.exp(log_w + gammaln(a1) - a1 * np.log(s1)) * (1.0 + a1 / s1)
        g2 = np.exp(log_w + gammaln(a1) - a1 * np.log(s2)) * (1.0 + a1 / s2)
        g3 = np.exp(log_w + gammaln(a2) - a2 * np.log(s2)) * (1.0 + a2 / s2)
        i2 = g1 - g2 - theta / (theta + 1.0) * g3
        block = (sign_p**j) * prefactor * float(
            np.sum((1.0 + lam) * (j + 1.0) * g1 - lam * (j + 1.0) * (j + 2.0) * i2)
        )
        total += block
        if abs(block) < cfg.tol:
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
    raise ConvergenceError(
        f"series did not settle below tol={cfg.tol:g} within max_j={cfg.max_j} "
        f"(last block {block:.3g})"
    )


def raw_moment(params: TlgParams, r: int, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """r-th raw moment E[X^r] of the TLG distribution by series summation.

    Parameters
    ----------
    params : TlgParams
    r : int
        Moment order, at least 1.
    cfg : SeriesConfig, optional
        Truncation policy; the default (max_j=500, tol=1e-12) is generous
        for any |p| < 1.

    Returns
    -------
    float

    Raises
    ------
    ConvergenceError
        If the series has not settled below ``cfg.tol`` by ``cfg.max_j``.
    """
    if int(r) < 1:
        raise ValueError(f"moment order r must be a positive integer, got {r!r}")
    return _series_sum(params.theta, params.p, params.lam, int(r), 0.0, cfg)


def mgf(params: TlgParams, t: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Moment generating function E[exp(tX)] for t < theta.

    The exponential tilt shifts every integral rate by t, so the series is
    finite exactly when t < theta (the slowest rate is theta - t at j=0).

    Raises
    ------
    ValueError
        If ``t >= theta``.
    ConvergenceError
        On truncation failure, as in `raw_moment`.
    """
    if not (np.isfinite(t) and t < params.theta):
        raise ValueError(f"mgf requires t < theta, got t={t!r}, theta={params.theta}")
    return _series_sum(params.theta, params.p, params.lam, 0, float(t), cfg)


def moment_set(mu1: float, mu2: float, mu3: float, mu4: float) -> MomentSet:
    """Assemble a MomentSet, deriving skewness and kurtosis.

    skewness = (mu3 - 3 mu1 mu2 + 2 mu1^3) / var^(3/2)
    kurtosis = (mu4 - 4 mu1 mu3 + 6 mu1^2 mu2 - 3 mu1^4) / var^2

    Raises
    ------
    ValueError
        If the implied variance is not strictly positive.
    """
    var = mu2 - mu1**2
    if not var > 0.0:
        raise ValueError(f"degenerate variance {var:g}; shape measures undefined")
    skew = (mu3 - 3.0 * mu1 * mu2 + 2.0 * mu1**3) / var**1.5
    kurt = (mu4 - 4.0 * mu1 * mu3 + 6.0 * mu1**2 * mu2 - 3.0 * mu1**4) / var**2
    return MomentSet(mu1, mu2, mu3, mu4, skew, kurt)


def skewness_kurtosis(params: TlgParams, cfg: SeriesConfig = DEFAULT_SERIES) -> MomentSet:
    """First four raw moments plus skewness and kurtosis of the TLG law."""
    mus = [raw_moment(params, r, cfg) for r in (1, 2, 3, 4)]
    return moment_set(*mus)
