"""Shared fixtures and quadrature oracles for the test suite."""

import time

import numpy as np
import pytest
from scipy.integrate import quad

import tlgdist as t

# maximum-likelihood estimates for the bundled dataset, used as a
# representative parameter point throughout the suite
REFERENCE_TLG = t.TlgParams(theta=0.17123, p=0.65679, lam=-0.95436)


@pytest.fixture(scope="session")
def bank():
    """The bundled 100-point waiting-times dataset."""
    return t.bank_waiting_times()


@pytest.fixture(scope="session")
def mle_fits(bank):
    """MLE fits of all three models on the bundled data, plus wall time."""
    start = time.perf_counter()
    fits = {model: t.fit_mle(model, bank) for model in t.MODELS}
    elapsed = time.perf_counter() - start
    return fits, elapsed


def integrate(fn, lo=0.0, hi=np.inf):
    """Adaptive quadrature of a scalar function, returning the value."""
    value, _ = quad(fn, lo, hi, limit=200)
    return value


def moment_oracle(params, r):
    """Raw moment E(X^r) by direct quadrature of the density."""
    return integrate(lambda x: x**r * t.tlg_pdf(params, x))


def mgf_oracle(params, s):
    """Moment generating function by quadrature, combined in log space
    so large exp(s x) factors cannot overflow against a tiny density."""

    def integrand(x):
        fx = t.tlg_pdf(params, x)
        if fx <= 0.0:
            return 0.0
        return float(np.exp(s * x + np.log(fx)))

    return integrate(integrand)


def ks_critical(n, two_sample=False):
    """Asymptotic 1% Kolmogorov-Smirnov critical value."""
    scale = np.sqrt(2.0 / n) if two_sample else np.sqrt(1.0 / n)
    return 1.6276 * scale
