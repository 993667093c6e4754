"""Fitting the Lindley, LG, and TLG models.

Maximum likelihood, least squares against plotting positions, and weighted
least squares all share one optimizer: Nelder-Mead restarted from a
deterministic lattice of starting points inside a fixed parameter box, with
out-of-box proposals rejected by an infinite penalty.  MLE results carry
standard errors from the inverse observed information (a Richardson-refined
central-difference Hessian) and clipped normal-approximation confidence
intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.stats import norm

from .distributions import (
    LgParams,
    LindleyParams,
    TlgParams,
    _lg_cdf,
    _lg_parts,
    _lindley_tail,
    _tlg_cdf,
)
from .exceptions import ConvergenceError, DataError

__all__ = [
    "Dataset",
    "OptimizerOptions",
    "FitResult",
    "MODELS",
    "METHODS",
    "param_names",
    "loglik_lindley",
    "loglik_lg",
    "loglik_tlg",
    "score_tlg",
    "fit_mle",
    "fit_lse",
    "fit_wlse",
    "observed_information",
    "confidence_intervals",
]

MODELS = ("lindley", "lg", "tlg")
METHODS = ("mle", "lse", "wlse")

# optimizer search box per model parameter; estimates outside are rejected
_BOX = {
    "lindley": ((0.01, 5.0),),
    "lg": ((0.01, 5.0), (-0.9, 0.95)),
    "tlg": ((0.01, 5.0), (-0.9, 0.95), (-0.99, 0.99)),
}
_NAMES = {
    "lindley": ("theta",),
    "lg": ("theta", "p"),
    "tlg": ("theta", "p", "lam"),
}
# legal space used to clip confidence intervals, wider than the search box
_LEGAL = {"theta": (0.0, math.inf), "p": (-1.0, 1.0), "lam": (-1.0, 1.0)}

_BOUNDARY_EPS = 1e-6


@dataclass(frozen=True, eq=False)
class Dataset:
    """Immutable sorted sample of strictly positive, finite reals."""

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise DataError("dataset must be a nonempty one-dimensional sample")
        if not np.all(np.isfinite(arr)):
            raise DataError("dataset contains non-finite values")
        if np.any(arr <= 0.0):
            raise DataError("dataset values must be strictly positive")
        arr = np.sort(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class OptimizerOptions:
    """Multistart Nelder-Mead controls.

    ``starts`` lattice restarts, ``max_iter`` iterations per start, ``ftol``
    the objective tolerance, ``xtol`` the simplex-diameter tolerance.
    """

    starts: int = 8
    max_iter: int = 5000
    ftol: float = 1e-10
    xtol: float = 1e-8

    def __post_init__(self) -> None:
        if self.starts < 1:
            raise ValueError(f"starts must be at least 1, got {self.starts!r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter!r}")
        if not (self.ftol > 0.0 and self.xtol > 0.0):
            raise ValueError("ftol and xtol must be positive")


DEFAULT_OPTIONS = OptimizerOptions()


@dataclass(frozen=True)
class FitResult:
    """One fitted model: estimates plus inference and convergence metadata.

    ``stderr``, ``cov``, and ``ci95`` are populated for MLE fits only; the
    regression-style methods report point estimates.  ``at_boundary`` flags
    estimates within 1e-6 of the search box.
    """

    model: str
    method: str
    estimates: np.ndarray
    stderr: np.ndarray | None
    cov: np.ndarray | None
    loglik: float
    converged: bool
    iterations: int
    ci95: tuple[tuple[float, float], ...] | None
    at_boundary: bool

    @property
    def k(self) -> int:
        return len(self.estimates)

    @property
    def names(self) -> tuple[str, ...]:
        return _NAMES[self.model]


def param_names(model: str) -> tuple[str, ...]:
    """Parameter names for a model, in estimation order."""
    _require_model(model)
    return _NAMES[model]


def _require_model(model: str) -> None:
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


# ---------------------------------------------------------------------------
# Log-likelihoods and the score
# ---------------------------------------------------------------------------

def _loglik_raw(theta: float, p: float, lam: float, xs: np.ndarray) -> float:
    """TLG log-likelihood on a raw parameter vector; -inf outside the legal
    region, which lets the optimizer treat invalid proposals as rejections."""
    if not (theta > 0.0 and -1.0 < p < 1.0 and abs(lam) <= 1.0):
        return -math.inf
    n = xs.size
    a, d = _lg_parts(theta, p, xs)
    g = (1.0 - a) / d
    w = (1.0 + lam) - 2.0 * lam * g
    if np.any(d <= 0.0) or np.any(w <= 0.0):
        return -math.inf
    return float(
        2.0 * n * math.log(theta)
        - n * math.log1p(theta)
        + n * math.log1p(-p)
        + np.sum(np.log1p(xs))
        - theta * np.sum(xs)
        - 2.0 * np.sum(np.log(d))
        + np.sum(np.log(w))
    )


def _model_loglik(model: str, vec, xs: np.ndarray) -> float:
    if model == "lindley":
        return _loglik_raw(vec[0], 0.0, 0.0, xs)
    if model == "lg":
        return _loglik_raw(vec[0], vec[1], 0.0, xs)
    return _loglik_raw(vec[0], vec[1], vec[2], xs)


def loglik_lindley(params: LindleyParams, data: Dataset) -> float:
    """Lindley log-likelihood."""
    return _loglik_raw(params.theta, 0.0, 0.0, data.values)


def loglik_lg(params: LgParams, data: Dataset) -> float:
    """LG log-likelihood."""
    return _loglik_raw(params.theta, params.p, 0.0, data.values)


def loglik_tlg(params: TlgParams, data: Dataset) -> float:
    """TLG log-likelihood.

    Computed from the closed form

        2n log(theta) - n log(1+theta) + n log(1-p) + sum log(1+x_i)
        - theta sum x_i - 2 sum log(1 - p*tail_i) + sum log(W_i)

    with tail the Lindley survival factor and W = (1+lam) - 2*lam*G for the
    LG cdf G.  Returns -inf when any log argument is non-positive.
    """
    return _loglik_raw(params.theta, params.p, params.lam, data.values)


def score_tlg(params: TlgParams, data: Dataset) -> np.ndarray:
    """Analytic gradient of the TLG log-likelihood in (theta, p, lam).

    Matches a central finite difference of `loglik_tlg` to high accuracy at
    interior points and vanishes at the maximum likelihood estimate.
    """
    theta, p, lam = params.theta, params.p, params.lam
    xs = data.values
    n = xs.size
    a, d = _lg_parts(theta, p, xs)
    g = (1.0 - a) / d
    w = (1.0 + lam) - 2.0 * lam * g
    # b = -dA/dtheta for the Lindley survival factor A
    b = xs * np.exp(-theta * xs) * (
        (1.0 + theta * xs / (theta + 1.0)) - 1.0 / (theta + 1.0) ** 2
    )
    s_theta = (
        2.0 * n / theta
        - n / (1.0 + theta)
        - np.sum(xs)
        - 2.0 * p * np.sum(b / d)
        - 2.0 * lam * (1.0 - p) * np.sum(b / (d**2 * w))
    )
    s_p = (
        -n / (1.0 - p)
        + 2.0 * np.sum(a / d)
        - 2.0 * lam * np.sum((1.0 - a) * a / (d**2 * w))
    )
    s_lam = np.sum((1.0 - 2.0 * g) / w)
    return np.array([s_theta, s_p, s_lam])


# ---------------------------------------------------------------------------
# Multistart optimizer
# ---------------------------------------------------------------------------

def _lattice_starts(dim: int, count: int, box) -> np.ndarray:
    """Deterministic low-discrepancy starts: per-dimension multipliers coprime
    with the start count walk a rank-1 lattice over the box."""
    mults = []
    c = 1
    while len(mults) < dim:
        if math.gcd(c, count) == 1:
            mults.append(c)
        c += 2
    pts = np.empty((count, dim))
    for i in range(count):
        for d in range(dim):
            frac = ((i * mults[d]) % count + 0.5) / count
            lo, hi = box[d]
            pts[i, d] = lo + frac * (hi - lo)
    return pts


def _penalized(objective, box):
    def wrapped(v):
        for val, (lo, hi) in zip(v, box):
            if not lo <= val <= hi:
                return math.inf
        out = objective(v)
        return math.inf if not np.isfinite(out) else out
    return wrapped


def _multistart(objective, box, opts: OptimizerOptions):
    """Run Nelder-Mead from every lattice start; return the best final point.

    Ties in the objective go to the earliest start.  Raises ConvergenceError
    when no start reaches a finite objective.
    """
    obj = _penalized(objective, box)
    best = None
    for start in _lattice_starts(len(box), opts.starts, box):
        res = minimize(
            obj,
            start,
            method="Nelder-Mead",
            options=dict(
                xatol=opts.xtol, fatol=opts.ftol, maxiter=opts.max_iter, disp=False
            ),
        )
        if not np.isfinite(res.fun):
            continue
        if best is None or res.fun < best.fun:
            best = res
    if best is None:
        raise ConvergenceError("optimization failed: no start reached the objective")
    return best


def _near_boundary(estimates, box) -> bool:
    return any(
        est - lo < _BOUNDARY_EPS or hi - est < _BOUNDARY_EPS
        for est, (lo, hi) in zip(estimates, box)
    )


def _clip_to_legal(model: str, lo: np.ndarray, hi: np.ndarray):
    names = _NAMES[model]
    out = []
    for name, a, b in zip(names, lo, hi):
        lo_lim, hi_lim = _LEGAL[name]
        out.append((max(float(a), lo_lim), min(float(b), hi_lim)))
    return tuple(out)


def fit_mle(model: str, data: Dataset, opts: OptimizerOptions = DEFAULT_OPTIONS) -> FitResult:
    """Maximum likelihood fit of ``model`` ("lindley", "lg", or "tlg").

    Maximizes the log-likelihood by multistart Nelder-Mead, then attaches
    the covariance matrix from the inverse observed information, per-
    parameter standard errors, and clipped 95% confidence intervals.

    Raises
    ------
    DataError
        If the sample is smaller than the parameter count.
    ConvergenceError
        If no start converges, or the information matrix is not invertible
        at the optimum.
    """
    _require_model(model)
    box = _BOX[model]
    if data.n < len(box):
        raise DataError(
            f"need at least {len(box)} observations to fit {model}, got {data.n}"
        )
    xs = data.values
    res = _multistart(lambda v: -_model_loglik(model, v, xs), box, opts)
    estimates = np.asarray(res.x, dtype=float)
    loglik = -float(res.fun)

    info = observed_information(model, estimates, data)
    cov = _invert_information(info)
    stderr = np.sqrt(np.diag(cov))
    z = norm.ppf(0.975)
    ci95 = _clip_to_legal(model, estimates - z * stderr, estimates + z * stderr)

    return FitResult(
        model=model,
        method="mle",
        estimates=estimates,
        stderr=stderr,
        cov=cov,
        loglik=loglik,
        converged=bool(res.success),
        iterations=int(res.nit),
        ci95=ci95,
        at_boundary=_near_boundary(estimates, box),
    )


def _model_cdf(model: str, vec, xs):
    if model == "lindley":
        return 1.0 - _lindley_tail(vec[0], xs)
    if model == "lg":
        return _lg_cdf(vec[0], vec[1], xs)
    return _tlg_cdf(vec[0], vec[1], vec[2], xs)


def _fit_least_squares(model: str, data: Dataset, opts: OptimizerOptions, weights, method: str) -> FitResult:
    _require_model(model)
    box = _BOX[model]
    if data.n < len(box):
        raise DataError(
            f"need at least {len(box)} observations to fit {model}, got {data.n}"
        )
    xs = data.values
    positions = np.arange(1, data.n + 1) / (data.n + 1.0)
    # constant rescaling keeps the function-spread tolerance meaningful
    # across sample sizes and weight magnitudes; the argmin is unchanged
    scale = float(np.sum(weights * np.ones_like(positions)))

    def objective(v):
        resid = _model_cdf(model, v, xs) - positions
        return float(np.sum(weights * resid * resid)) / scale

    res = _multistart(objective, box, opts)
    estimates = np.asarray(res.x, dtype=float)
    return FitResult(
        model=model,
        method=method,
        estimates=estimates,
        stderr=None,
        cov=None,
        loglik=_model_loglik(model, estimates, xs),
        converged=bool(res.success),
        iterations=int(res.nit),
        ci95=None,
        at_boundary=_near_boundary(estimates, box),
    )


def fit_lse(model: str, data: Dataset, opts: OptimizerOptions = DEFAULT_OPTIONS) -> FitResult:
    """Least squares fit: minimize sum_j (F(x_(j)) - j/(n+1))^2.

    Point estimates only; no standard errors.  The stored loglik is the
    model log-likelihood evaluated at the least-squares estimates.
    """
    return _fit_least_squares(model, data, opts, 1.0, "lse")


def fit_wlse(model: str, data: Dataset, opts: OptimizerOptions = DEFAULT_OPTIONS) -> FitResult:
    """Weighted least squares fit with w_j = (n+1)^2 (n+2) / (j (n-j+1)),
    the reciprocal variances of the ordered-uniform plotting positions."""
    n = data.n
    j = np.arange(1, n + 1, dtype=float)
    weights = (n + 1.0) ** 2 * (n + 2.0) / (j * (n - j + 1.0))
    return _fit_least_squares(model, data, opts, weights, "wlse")


# ---------------------------------------------------------------------------
# Observed information and confidence intervals
# ---------------------------------------------------------------------------

def _hessian(f, x0: np.ndarray, hs: np.ndarray) -> np.ndarray:
    k = x0.size
    out = np.empty((k, k))
    f0 = f(x0)
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = hs[i]
        out[i, i] = (f(x0 + ei) - 2.0 * f0 + f(x0 - ei)) / hs[i] ** 2
        for j in range(i + 1, k):
            ej = np.zeros(k)
            ej[j] = hs[j]
            out[i, j] = (
                f(x0 + ei + ej) - f(x0 + ei - ej) - f(x0 - ei + ej) + f(x0 - ei - ej)
            ) / (4.0 * hs[i] * hs[j])
            out[j, i] = out[i, j]
    return out


def observed_information(model: str, estimates, data: Dataset) -> np.ndarray:
    """Observed information: the negative log-likelihood Hessian at
    ``estimates``, by central second differences with one Richardson
    refinement, symmetrized.

    Step sizes are max(1e-4, 1e-4 |estimate|) per coordinate, halved for the
    refinement pass.
    """
    _require_model(model)
    est = np.asarray(estimates, dtype=float)
    xs = data.values

    def f(v):
        return _model_loglik(model, v, xs)

    hs = np.maximum(1e-4, 1e-4 * np.abs(est))
    coarse = _hessian(f, est, hs)
    fine = _hessian(f, est, hs / 2.0)
    hess = (4.0 * fine - coarse) / 3.0
    hess = 0.5 * (hess + hess.T)
    return -hess


def _invert_information(info: np.ndarray) -> np.ndarray:
    eigs = np.linalg.eigvalsh(info)
    if np.any(~np.isfinite(eigs)) or np.min(eigs) <= 0.0:
        cond = np.max(np.abs(eigs)) / max(np.min(np.abs(eigs)), 1e-300)
        raise ConvergenceError(
            "observed information is not positive definite "
            f"(eigenvalues {np.array2string(eigs, precision=3)}, cond {cond:.3g}); "
            "standard errors unavailable"
        )
    return np.linalg.inv(info)


def confidence_intervals(fit: FitResult, level: float) -> tuple[tuple[float, float], ...]:
    """Normal-approximation confidence intervals at the given level.

    Endpoints are estimate +- z * stderr, clipped to the legal parameter
    space (theta >= 0, p and lam within [-1, 1]).  ``level=0`` degenerates
    to point intervals.

    Raises
    ------
    ValueError
        If the fit carries no covariance matrix (non-MLE methods) or the
        level is outside [0, 1).
    """
    if not 0.0 <= level < 1.0:
        raise ValueError(f"level must lie in [0, 1), got {level!r}")
    if fit.stderr is None:
        raise ValueError(f"{fit.method} fits carry no standard errors")
    z = norm.ppf(0.5 + level / 2.0)
    lo = fit.estimates - z * fit.stderr
    hi = fit.estimates + z * fit.stderr
    return _clip_to_legal(fit.model, lo, hi)
