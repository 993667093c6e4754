"""Random variate generation for the Lindley, LG, and TLG families.

The Lindley sampler uses the exponential/gamma mixture structure; the LG
sampler compounds it with a geometric count (minimum of N Lindley draws) for
p > 0 and falls back to cdf inversion for p <= 0, where the compounding
picture breaks down.  TLG draws come from the min/max mixture representation
of the transmutation map applied to the LG base.

Randomness is a caller-supplied ``numpy.random.Generator``; the same seed
reproduces the same sequence.  One generator must not be shared across
threads.
"""

from __future__ import annotations

import numpy as np

from .distributions import (
    LgParams,
    LindleyParams,
    TlgParams,
    lg_cdf,
    lg_pdf,
    lindley_cdf,
    lindley_pdf,
    _lg_cdf,
    _lindley_tail,
)
from .transmute import BaseDistribution

__all__ = [
    "RandomnessSource",
    "make_rng",
    "sample_lindley",
    "sample_lg",
    "sample_tlg",
    "lindley_base",
    "lg_base",
]

RandomnessSource = np.random.Generator

# geometric counts above the cap would stall the compounding sampler; such
# draws (probability p**cap) are generated by inversion instead
_GEOMETRIC_CAP = 10**6


def make_rng(seed: int | None = None) -> RandomnessSource:
    """Seedable uniform stream; a fixed seed gives a reproducible sequence."""
    return np.random.default_rng(seed)


def _sample_lindley_array(theta: float, rng: RandomnessSource, size: int):
    # Exp(theta) with probability theta/(theta+1), else Gamma(2, theta)
    # drawn as the sum of two exponentials.
    u = rng.random(size)
    e1 = rng.exponential(1.0 / theta, size)
    e2 = rng.exponential(1.0 / theta, size)
    return np.where(u < theta / (theta + 1.0), e1, e1 + e2)


def _invert_cdf(cdf, u):
    """Vectorized inverse of a monotone cdf at probabilities ``u``.

    Doubles per-element upper brackets until they contain their targets,
    then bisects to an interval of 1e-12 relative width.
    """
    u = np.asarray(u, dtype=float)
    hi = np.ones_like(u)
    while True:
        short = np.asarray(cdf(hi)) <= u
        if not short.any():
            break
        hi[short] *= 2.0
    lo = np.zeros_like(u)
    width_target = 1e-12 * max(1.0, float(np.max(hi)))
    while float(np.max(hi - lo)) > width_target:
        mid = 0.5 * (lo + hi)
        below = np.asarray(cdf(mid)) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _capped_min_cdf(theta: float, p: float, cap: int, x):
    # cdf of the minimum of N Lindley draws given N > cap, where N is
    # Geometric(1 - p): survival (1 - p) A**(cap + 1) / (1 - p A) with
    # A the single-draw survival factor
    a = _lindley_tail(theta, np.asarray(x, dtype=float))
    with np.errstate(divide="ignore"):
        log_sf = np.log1p(-p) + (cap + 1.0) * np.log(a) - np.log1p(-p * a)
    return 1.0 - np.exp(log_sf)


def _sample_lg_array(theta: float, p: float, rng: RandomnessSource, size: int):
    if p == 0.0:
        return _sample_lindley_array(theta, rng, size)
    if p < 0.0:
        return _invert_cdf(lambda x: _lg_cdf(theta, p, x), rng.random(size))
    counts = rng.geometric(1.0 - p, size)
    big = counts > _GEOMETRIC_CAP
    counts = np.where(big, 1, counts)
    offsets = np.concatenate(([0], np.cumsum(counts[:-1])))
    pool = _sample_lindley_array(theta, rng, int(counts.sum()))
    out = np.minimum.reduceat(pool, offsets)
    if big.any():
        out[big] = _invert_cdf(
            lambda x: _capped_min_cdf(theta, p, _GEOMETRIC_CAP, x),
            rng.random(int(big.sum())),
        )
    return out


def sample_lindley(params: LindleyParams, rng: RandomnessSource, size: int | None = None):
    """Draw from the Lindley distribution.

    Parameters
    ----------
    params : LindleyParams
    rng : numpy.random.Generator
    size : int, optional
        When omitted, return a single float; otherwise an ndarray of draws.
    """
    if size is None:
        return float(_sample_lindley_array(params.theta, rng, 1)[0])
    return _sample_lindley_array(params.theta, rng, int(size))


def sample_lg(params: LgParams, rng: RandomnessSource, size: int | None = None):
    """Draw from the LG distribution.

    For p in (0, 1) this is the minimum of a geometric number of Lindley
    draws; for p <= 0 draws are produced by numerical cdf inversion.

    Parameters
    ----------
    params : LgParams
    rng : numpy.random.Generator
    size : int, optional
        When omitted, return a single float; otherwise an ndarray.
    """
    if size is None:
        return float(_sample_lg_array(params.theta, params.p, rng, 1)[0])
    return _sample_lg_array(params.theta, params.p, rng, int(size))


def sample_tlg(params: TlgParams, rng: RandomnessSource, n: int):
    """Draw ``n`` independent TLG variates.

    Uses the mixture form of the transmutation map over the LG base: with
    probability |lam| the min (lam >= 0) or max (lam < 0) of two LG draws,
    otherwise a single LG draw, vectorized across the batch.

    Parameters
    ----------
    params : TlgParams
    rng : numpy.random.Generator
    n : int
        Number of draws, at least 1.

    Returns
    -------
    ndarray

    Raises
    ------
    ValueError
        If ``n < 1``.
    """
    if int(n) < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    theta, p, lam = params.theta, params.p, params.lam
    x1 = _sample_lg_array(theta, p, rng, n)
    x2 = _sample_lg_array(theta, p, rng, n)
    u = rng.random(n)
    if lam >= 0.0:
        return np.where(u < lam, np.minimum(x1, x2), x1)
    return np.where(u < -lam, np.maximum(x1, x2), x1)


def lindley_base(params: LindleyParams) -> BaseDistribution:
    """Package the Lindley family as a BaseDistribution for transmutation."""
    return BaseDistribution(
        pdf=lambda x: lindley_pdf(params, x),
        cdf=lambda x: lindley_cdf(params, x),
        sampler=lambda rng: sample_lindley(params, rng),
    )


def lg_base(params: LgParams) -> BaseDistribution:
    """Package the LG family as a BaseDistribution for transmutation."""
    return BaseDistribution(
        pdf=lambda x: lg_pdf(params, x),
        cdf=lambda x: lg_cdf(params, x),
        sampler=lambda rng: sample_lg(params, rng),
    )
