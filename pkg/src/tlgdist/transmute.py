"""Quadratic rank transmutation: wrap any base distribution F into
F2 = (1+lam)*F - lam*F^2 for lam in [-1, 1].

The same map has a sampling representation as a mixture over the min or max
of two independent base draws, which is what `transmuted_sample` uses.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "BaseDistribution",
    "TransmutedDistribution",
    "transmuted_cdf",
    "transmuted_pdf",
    "transmuted_sample",
    "spot_check_base",
]

log = logging.getLogger(__name__)

# cdf values this far outside [0,1] are treated as bugs, not roundoff
_CLAMP_NOISE = 1e-9


@dataclass(frozen=True)
class BaseDistribution:
    """A distribution presented as (pdf, cdf, sampler) callables.

    ``pdf`` and ``cdf`` must accept a float or ndarray; ``sampler`` takes a
    numpy Generator and returns one draw.  Consistency between the three is
    the caller's responsibility; `spot_check_base` verifies it numerically.
    """

    pdf: Callable
    cdf: Callable
    sampler: Callable


@dataclass(frozen=True)
class TransmutedDistribution:
    """A base distribution plus a transmutation coefficient lam in [-1, 1]."""

    base: BaseDistribution
    lam: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.lam) and abs(self.lam) <= 1.0):
            raise ValueError(f"lam must lie in [-1, 1], got {self.lam!r}")


def _clamped_base_cdf(t: TransmutedDistribution, x):
    f = np.asarray(t.base.cdf(x), dtype=float)
    if np.any(f < -_CLAMP_NOISE) or np.any(f > 1.0 + _CLAMP_NOISE):
        log.warning(
            "base cdf left [0,1] by more than %.0e (range [%g, %g]); clamping",
            _CLAMP_NOISE, float(np.min(f)), float(np.max(f)),
        )
    return np.clip(f, 0.0, 1.0)


def transmuted_cdf(t: TransmutedDistribution, x):
    """(1+lam)*F(x) - lam*F(x)^2 for the base cdf F.

    Base cdf values outside [0,1] are clamped; excursions beyond 1e-9 are
    logged as warnings since they indicate a broken base, not roundoff.
    """
    f = _clamped_base_cdf(t, x)
    out = (1.0 + t.lam) * f - t.lam * f * f
    if np.ndim(x) == 0 and out.ndim == 0:
        return float(out)
    return out


def transmuted_pdf(t: TransmutedDistribution, x):
    """f(x) * ((1+lam) - 2*lam*F(x)) for base density f and cdf F."""
    f = _clamped_base_cdf(t, x)
    dens = np.asarray(t.base.pdf(x), dtype=float)
    out = dens * ((1.0 + t.lam) - 2.0 * t.lam * f)
    if np.ndim(x) == 0 and out.ndim == 0:
        return float(out)
    return out


def transmuted_sample(t: TransmutedDistribution, rng: np.random.Generator) -> float:
    """One draw whose cdf is `transmuted_cdf`.

    With probability |lam| return the min (lam >= 0) or max (lam < 0) of two
    independent base draws; otherwise a single base draw.
    """
    if rng.random() < abs(t.lam):
        pair = (t.base.sampler(rng), t.base.sampler(rng))
        return min(pair) if t.lam >= 0.0 else max(pair)
    return t.base.sampler(rng)


def spot_check_base(base: BaseDistribution, xs, rtol: float = 1e-5) -> None:
    """Verify a BaseDistribution is internally consistent at points ``xs``.

    Checks that the cdf is nondecreasing and inside [0,1], and that a central
    finite difference of the cdf reproduces the pdf to ``rtol`` plus the
    differencing noise floor, wherever the density is not vanishingly small.

    Raises
    ------
    ValueError
        On the first violated property.
    """
    xs = np.sort(np.asarray(xs, dtype=float))
    f = np.asarray(base.cdf(xs), dtype=float)
    if np.any(f < -_CLAMP_NOISE) or np.any(f > 1.0 + _CLAMP_NOISE):
        raise ValueError("base cdf leaves [0, 1]")
    if np.any(np.diff(f) < -_CLAMP_NOISE):
        raise ValueError("base cdf is not nondecreasing")
    h = np.maximum(1e-6, 1e-6 * np.abs(xs))
    slope = (np.asarray(base.cdf(xs + h)) - np.asarray(base.cdf(xs - h))) / (2.0 * h)
    dens = np.asarray(base.pdf(xs), dtype=float)
    # differencing a cdf leaves rounding noise of a few ulps of 1 over 2h,
    # which swamps rtol*dens where the cdf is saturated and the density tiny
    noise = 8.0 * np.finfo(float).eps / (2.0 * h)
    mask = dens > 1e-12
    err = np.abs(slope - dens)
    if np.any(err[mask] > rtol * np.abs(dens[mask]) + noise[mask]):
        raise ValueError("base pdf does not match the derivative of the cdf")
