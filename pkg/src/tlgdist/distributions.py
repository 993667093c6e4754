"""Lindley, Lindley-geometric (LG), and transmuted Lindley-geometric (TLG)
distributions: densities, distribution functions, reliability quantities,
and a numerical quantile.

All evaluation functions accept a scalar or an array-like ``x`` and return a
float or ndarray to match.  Negative ``x`` yields density 0 and cdf 0 rather
than an error, which keeps empirical-cdf comparisons branch-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceError

__all__ = [
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
]

QUANTILE_TOL = 1e-12
_QUANTILE_MAX_ITER = 200
# Beyond this cdf value the plain complement 1-cdf has lost enough digits
# that the factored survival expression takes over.
_SF_COMPLEMENT_CUTOFF = 0.999
# Density-sign validation grid, in units of 1/theta.
_CHECK_GRID = np.geomspace(1e-6, 1e4, 512)


# ---------------------------------------------------------------------------
# Raw kernels: vectorized, no parameter objects.  The fitting and sampling
# code calls these directly in hot loops; the public API wraps them.
# ---------------------------------------------------------------------------

def _lindley_tail(theta: float, x):
    """Lindley survival factor (1 + theta*x/(theta+1)) * exp(-theta*x)."""
    return (1.0 + theta * x / (theta + 1.0)) * np.exp(-theta * x)


def _lg_parts(theta: float, p: float, x):
    """Return (tail, denom) with tail the Lindley survival factor and
    denom = 1 - p*tail, the pieces every LG/TLG expression is built from."""
    a = _lindley_tail(theta, x)
    return a, 1.0 - p * a


def _lindley_pdf(theta: float, x):
    return theta**2 / (theta + 1.0) * (1.0 + x) * np.exp(-theta * x)


def _lg_cdf(theta: float, p: float, x):
    a, d = _lg_parts(theta, p, x)
    return (1.0 - a) / d


def _lg_pdf(theta: float, p: float, x):
    a, d = _lg_parts(theta, p, x)
    return (1.0 - p) * _lindley_pdf(theta, x) / d**2


def _tlg_cdf(theta: float, p: float, lam: float, x):
    g = _lg_cdf(theta, p, x)
    direct = g * (1.0 + lam - lam * g)
    # Near saturation the quadratic form wobbles at ulp scale from
    # cancellation; the complement of the factored survival stays monotone.
    a, d = _lg_parts(theta, p, x)
    gc = a * (1.0 - p) / d
    factored = gc * (gc + g * (1.0 - lam))
    return np.where(direct > _SF_COMPLEMENT_CUTOFF, 1.0 - factored, direct)


def _tlg_pdf(theta: float, p: float, lam: float, x):
    a, d = _lg_parts(theta, p, x)
    g = (1.0 - a) / d
    return (1.0 - p) * _lindley_pdf(theta, x) / d**2 * ((1.0 + lam) - 2.0 * lam * g)


def _tlg_sf(theta: float, p: float, lam: float, x):
    a, d = _lg_parts(theta, p, x)
    g = (1.0 - a) / d
    cdf = g * (1.0 + lam - lam * g)
    # 1 - G computed without cancellation, then
    # sf = (1-G)*(1 - lam*G) = (1-G)*((1-G) + G*(1-lam)).
    gc = a * (1.0 - p) / d
    factored = gc * (gc + g * (1.0 - lam))
    return np.where(cdf > _SF_COMPLEMENT_CUTOFF, factored, 1.0 - cdf)


# ---------------------------------------------------------------------------
# Parameter containers
# ---------------------------------------------------------------------------

def _require_theta(theta: float) -> None:
    if not (np.isfinite(theta) and theta > 0.0):
        raise ValueError(f"theta must be a positive finite real, got {theta!r}")


def _require_p(p: float) -> None:
    if not (np.isfinite(p) and -1.0 < p < 1.0):
        raise ValueError(f"p must lie in (-1, 1), got {p!r}")


def _require_lam(lam: float) -> None:
    if not (np.isfinite(lam) and abs(lam) <= 1.0):
        raise ValueError(f"lam must lie in [-1, 1], got {lam!r}")


def _require_valid_density(theta: float, p: float, lam: float) -> None:
    """Reject parameter combinations whose density goes negative.

    Checks a 512-point log-spaced grid (scaled by 1/theta) plus the two
    support limits, where the transmutation factor tends to 1+lam and 1-lam.
    """
    xs = np.concatenate(([0.0], _CHECK_GRID / theta))
    dens = _tlg_pdf(theta, p, lam, xs)
    if not np.all(dens >= -1e-12):
        worst = xs[int(np.nanargmin(dens))]
        raise ValueError(
            f"density is negative near x={worst:.6g} for "
            f"theta={theta}, p={p}, lam={lam}"
        )
    if (1.0 + lam) < -1e-12 or (1.0 - lam) < -1e-12:
        raise ValueError(f"density limit is negative for lam={lam}")


@dataclass(frozen=True)
class LindleyParams:
    """One-parameter Lindley distribution, rate-like shape ``theta > 0``."""

    theta: float

    def __post_init__(self) -> None:
        _require_theta(self.theta)


@dataclass(frozen=True)
class LgParams:
    """Lindley-geometric distribution.

    Parameters
    ----------
    theta : float
        Positive rate-like shape.
    p : float
        Compounding parameter in (-1, 1).  ``p = 0`` recovers the plain
        Lindley distribution.  Negative values keep a valid density; the
        constructor verifies non-negativity on a log-spaced grid.
    """

    theta: float
    p: float

    def __post_init__(self) -> None:
        _require_theta(self.theta)
        _require_p(self.p)
        _require_valid_density(self.theta, self.p, 0.0)


@dataclass(frozen=True)
class TlgParams:
    """Transmuted Lindley-geometric distribution.

    Parameters
    ----------
    theta : float
        Positive rate-like shape.
    p : float
        Compounding parameter in (-1, 1).
    lam : float
        Transmutation coefficient in [-1, 1].  ``lam = 0`` recovers the LG
        base; positive values shift mass left (min-like), negative values
        shift mass right (max-like).
    """

    theta: float
    p: float
    lam: float

    def __post_init__(self) -> None:
        _require_theta(self.theta)
        _require_p(self.p)
        _require_lam(self.lam)
        _require_valid_density(self.theta, self.p, self.lam)


# ---------------------------------------------------------------------------
# Public evaluation API
# ---------------------------------------------------------------------------

def _eval(x, fn, below: float = 0.0):
    """Apply vectorized ``fn`` on max(x, 0), substituting ``below`` at x < 0."""
    arr = np.asarray(x, dtype=float)
    out = np.asarray(fn(np.maximum(arr, 0.0)), dtype=float)
    out = np.where(arr < 0.0, below, out)
    if arr.ndim == 0:
        return float(out)
    return out


def lindley_pdf(params: LindleyParams, x):
    """Lindley density theta^2/(theta+1) * (1+x) * exp(-theta*x).

    Parameters
    ----------
    params : LindleyParams
    x : float or array_like
        Evaluation points; negative entries give 0.

    Returns
    -------
    float or ndarray
    """
    return _eval(x, lambda xs: _lindley_pdf(params.theta, xs))


def lindley_cdf(params: LindleyParams, x):
    """Lindley distribution function 1 - (1 + theta*x/(theta+1)) * exp(-theta*x)."""
    return _eval(x, lambda xs: 1.0 - _lindley_tail(params.theta, xs))


def lg_pdf(params: LgParams, x):
    """LG density: the Lindley density damped by (1-p)/(1 - p*tail)^2."""
    return _eval(x, lambda xs: _lg_pdf(params.theta, params.p, xs))


def lg_cdf(params: LgParams, x):
    """LG distribution function (1 - tail) / (1 - p*tail).

    ``tail`` is the Lindley survival factor, so ``p = 0`` collapses to the
    Lindley cdf exactly.
    """
    return _eval(x, lambda xs: _lg_cdf(params.theta, params.p, xs))


def tlg_pdf(params: TlgParams, x):
    """TLG density f_LG(x) * ((1+lam) - 2*lam*F_LG(x)).

    Parameters
    ----------
    params : TlgParams
    x : float or array_like

    Returns
    -------
    float or ndarray
        Non-negative for every parameter triple accepted at construction.
    """
    return _eval(x, lambda xs: _tlg_pdf(params.theta, params.p, params.lam, xs))


def tlg_cdf(params: TlgParams, x):
    """TLG distribution function G * (1 + lam - lam*G) with G the LG cdf."""
    return _eval(x, lambda xs: _tlg_cdf(params.theta, params.p, params.lam, xs))


def tlg_sf(params: TlgParams, x):
    """TLG survival function.

    Uses 1 - cdf until the cdf exceeds 0.999, then switches to the factored
    complement (1-G)*((1-G) + G*(1-lam)) which keeps relative accuracy deep
    into the right tail.
    """
    return _eval(
        x, lambda xs: _tlg_sf(params.theta, params.p, params.lam, xs), below=1.0
    )


def tlg_hazard(params: TlgParams, x):
    """TLG hazard rate pdf/sf.

    Raises
    ------
    ValueError
        If the survival function underflows to zero at any requested point.
    """
    sf = _eval(
        x, lambda xs: _tlg_sf(params.theta, params.p, params.lam, xs), below=1.0
    )
    if np.any(np.asarray(sf) <= 0.0):
        hi = np.max(np.asarray(x, dtype=float))
        raise ValueError(
            f"survival underflows to zero at x={hi:.6g}; hazard undefined there"
        )
    return tlg_pdf(params, x) / sf


def tlg_cumhazard(params: TlgParams, x):
    """TLG cumulative hazard -log(sf); zero at x=0, nondecreasing.

    Raises
    ------
    ValueError
        If the survival function underflows to zero at any requested point.
    """
    sf = tlg_sf(params, x)
    if np.any(np.asarray(sf) <= 0.0):
        hi = np.max(np.asarray(x, dtype=float))
        raise ValueError(
            f"survival underflows to zero at x={hi:.6g}; cumulative hazard "
            "undefined there"
        )
    return -np.log(sf) if np.ndim(sf) else float(-np.log(sf))


def tlg_quantile(params: TlgParams, u: float) -> float:
    """Invert the TLG cdf at probability ``u``.

    Brackets the root by doubling from x=1, then runs a safeguarded
    secant/bisection hybrid until |cdf(x) - u| <= 1e-12.

    Parameters
    ----------
    params : TlgParams
    u : float
        Probability strictly inside (0, 1).

    Returns
    -------
    float

    Raises
    ------
    ValueError
        If ``u`` is outside (0, 1).
    ConvergenceError
        If the residual target is not met within the iteration cap.
    """
    if not (np.isfinite(u) and 0.0 < u < 1.0):
        raise ValueError(f"u must lie strictly inside (0, 1), got {u!r}")
    theta, p, lam = params.theta, params.p, params.lam

    def resid(x: float) -> float:
        return float(_tlg_cdf(theta, p, lam, x)) - u

    hi = 1.0
    fhi = resid(hi)
    while fhi <= 0.0:
        hi *= 2.0
        fhi = resid(hi)
    lo, flo = 0.0, -u

    stale = 0  # bisect after the same endpoint survives two replacements
    prev = 0
    for _ in range(_QUANTILE_MAX_ITER):
        if stale < 2 and fhi != flo:
            x = hi - fhi * (hi - lo) / (fhi - flo)
            if not lo < x < hi:
                x = 0.5 * (lo + hi)
        else:
            x = 0.5 * (lo + hi)
            stale = 0
        fx = resid(x)
        if abs(fx) <= QUANTILE_TOL:
            return x
        if fx < 0.0:
            lo, flo = x, fx
            stale = stale + 1 if prev == -1 else 0
            prev = -1
        else:
            hi, fhi = x, fx
            stale = stale + 1 if prev == 1 else 0
            prev = 1
    raise ConvergenceError(
        f"quantile solve for u={u} stalled: bracket [{lo:.9g}, {hi:.9g}], "
        f"residual {min(abs(flo), abs(fhi)):.3g}"
    )
