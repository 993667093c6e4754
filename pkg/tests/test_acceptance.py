"""Release gate: nine numbered end-to-end checks against reference values
for the bundled dataset plus independent numerical oracles.

Each test prints one `[criterion N] PASS/FAIL` line with capture disabled
so the verdicts appear in the live pytest stream.
"""

from itertools import product

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import ks_2samp, kstest

import tlgdist as t
from tlgdist.sampling import _invert_cdf
from tlgdist.order_stats import order_stat_pdf_expanded
from conftest import REFERENCE_TLG, ks_critical, mgf_oracle, moment_oracle

COV_REFERENCE = np.array([
    [0.001, -0.005, 0.002],
    [-0.005, 0.032, -0.020],
    [0.002, -0.020, 0.037],
])


@pytest.fixture
def criterion(capsys):
    """Run one numbered check list and print its verdict uncaptured."""

    def run(num, body):
        failures = []
        note = None
        try:
            note = body(failures)
        except Exception as exc:
            failures.append(f"unexpected {type(exc).__name__}: {exc}")
        status = "PASS" if not failures else "FAIL"
        suffix = f" ({note})" if note else ""
        with capsys.disabled():
            print(f"\n[criterion {num}] {status}{suffix}", flush=True)
        assert not failures, "; ".join(failures)

    return run


def check(failures, ok, message):
    if not ok:
        failures.append(message)


def test_criterion_1_mle_point_estimates(criterion, mle_fits):
    def body(failures):
        fits, elapsed = mle_fits
        li, lg, tlg = fits["lindley"], fits["lg"], fits["tlg"]
        check(failures, abs(li.estimates[0] - 0.186) <= 0.005,
              f"lindley theta {li.estimates[0]:.4f}")
        check(failures, abs(-li.loglik - 319.037) <= 0.05,
              f"lindley -loglik {-li.loglik:.4f}")
        check(failures, abs(lg.estimates[0] - 0.202) <= 0.01,
              f"lg theta {lg.estimates[0]:.4f}")
        check(failures, abs(lg.estimates[1] + 0.242) <= 0.05,
              f"lg p {lg.estimates[1]:.4f}")
        check(failures, abs(-lg.loglik - 318.913) <= 0.05,
              f"lg -loglik {-lg.loglik:.4f}")
        check(failures, abs(tlg.estimates[0] - 0.171) <= 0.01,
              f"tlg theta {tlg.estimates[0]:.4f}")
        check(failures, abs(tlg.estimates[1] - 0.657) <= 0.05,
              f"tlg p {tlg.estimates[1]:.4f}")
        check(failures, abs(tlg.estimates[2] + 0.954) <= 0.05,
              f"tlg lambda {tlg.estimates[2]:.4f}")
        check(failures, abs(-tlg.loglik - 317.207) <= 0.05,
              f"tlg -loglik {-tlg.loglik:.4f}")
        check(failures, elapsed < 30.0, f"fits took {elapsed:.1f}s")
        return f"three fits in {elapsed:.2f}s"

    criterion(1, body)


def test_criterion_2_comparison_table(criterion, bank, mle_fits):
    def body(failures):
        fits, _ = mle_fits
        rows = {r.model: r for r in t.compare_models(list(fits.values()), bank)}
        expected = {
            "lindley": (638.1, 640.1, 640.1),
            "lg": (637.8, 641.8, 642.0),
            "tlg": (634.414, 640.414, 640.664),
        }
        for model, (neg2ll, aic, aicc) in expected.items():
            row = rows[model]
            check(failures, abs(row.neg2ll - neg2ll) <= 0.2,
                  f"{model} -2loglik {row.neg2ll:.4f}")
            check(failures, abs(row.aic - aic) <= 0.3, f"{model} aic {row.aic:.4f}")
            check(failures, abs(row.aicc - aicc) <= 0.3, f"{model} aicc {row.aicc:.4f}")
        check(failures, abs(rows["lindley"].ks - 0.0677) <= 0.005,
              f"lindley ks {rows['lindley'].ks:.4f}")
        check(failures, abs(rows["lg"].ks - 0.0557) <= 0.005,
              f"lg ks {rows['lg'].ks:.4f}")
        check(failures, 0.01 <= rows["tlg"].ks <= 0.12,
              f"tlg ks {rows['tlg'].ks:.4f} outside [0.01, 0.12]")
        return f"tlg K-S {rows['tlg'].ks:.4f}"

    criterion(2, body)


def test_criterion_3_covariance_and_theta_interval(criterion, bank, mle_fits):
    def body(failures):
        fits, _ = mle_fits
        tlg = fits["tlg"]
        info = t.observed_information("tlg", tlg.estimates, bank)
        cov = np.linalg.inv(info)
        worst = float(np.max(np.abs(cov - COV_REFERENCE)))
        check(failures, worst <= 0.005, f"covariance mismatch {worst:.4f}")
        lo, hi = tlg.ci95[0]
        check(failures, abs(lo - 0.102) <= 0.01, f"theta ci low {lo:.4f}")
        check(failures, abs(hi - 0.240) <= 0.01, f"theta ci high {hi:.4f}")
        return f"max |cov err| {worst:.4f}"

    criterion(3, body)


def test_criterion_4_normalization(criterion):
    def body(failures):
        rng = np.random.default_rng(1234)
        worst = 0.0
        for i in range(50):
            family = ("lindley", "lg", "tlg")[i % 3]
            theta = float(10.0 ** rng.uniform(-1.0, 0.7))
            p = float(rng.uniform(-0.9, 0.9))
            lam = float(rng.uniform(-1.0, 1.0))
            if family == "lindley":
                pdf, label = (
                    lambda x: t.lindley_pdf(t.LindleyParams(theta), x),
                    f"lindley({theta:.3f})",
                )
            elif family == "lg":
                pdf, label = (
                    lambda x: t.lg_pdf(t.LgParams(theta, p), x),
                    f"lg({theta:.3f}, {p:.3f})",
                )
            else:
                pdf, label = (
                    lambda x: t.tlg_pdf(t.TlgParams(theta, p, lam), x),
                    f"tlg({theta:.3f}, {p:.3f}, {lam:.3f})",
                )
            total, _ = quad(pdf, 0.0, np.inf, limit=200)
            err = abs(total - 1.0)
            worst = max(worst, err)
            check(failures, err <= 1e-8, f"{label} integrates to {total!r}")
        return f"50 triples, worst |err| {worst:.2e}"

    criterion(4, body)


def test_criterion_5_moments_and_mgf_against_quadrature(criterion):
    def body(failures):
        cfg = t.SeriesConfig(max_j=500, tol=1e-15)
        worst = 0.0
        for theta, p, lam in product((0.2, 1.0, 3.0), (-0.2, 0.3, 0.8), (-0.9, 0.0, 0.9)):
            params = t.TlgParams(theta=theta, p=p, lam=lam)
            label = f"({theta}, {p}, {lam})"
            for r in (1, 2, 3, 4):
                series = t.raw_moment(params, r, cfg)
                oracle = moment_oracle(params, r)
                err = abs(series - oracle) / abs(oracle)
                worst = max(worst, err)
                check(failures, err <= 1e-6, f"moment r={r} at {label}: rel err {err:.2e}")
            zero_err = abs(t.mgf(params, 0.0, cfg) - 1.0)
            check(failures, zero_err <= 1e-12, f"mgf(0) at {label}: err {zero_err:.2e}")
            for s in (-0.5 * theta, 0.5 * theta * min(1.0, theta)):
                series = t.mgf(params, s, cfg)
                oracle = mgf_oracle(params, s)
                err = abs(series - oracle) / abs(oracle)
                worst = max(worst, err)
                check(failures, err <= 1e-6, f"mgf({s:g}) at {label}: rel err {err:.2e}")
        return f"27-point grid, worst rel err {worst:.2e}"

    criterion(5, body)


def test_criterion_6_score_vector(criterion, bank):
    def body(failures):
        rng = np.random.default_rng(99)
        worst = 0.0
        for _ in range(20):
            v = np.array([
                rng.uniform(0.05, 2.0),
                rng.uniform(-0.8, 0.85),
                rng.uniform(-0.9, 0.9),
            ])
            analytic = t.score_tlg(t.TlgParams(*v), bank)
            fd = np.empty(3)
            for i in range(3):
                h = 1e-6 * max(1.0, abs(v[i]))
                hi, lo = v.copy(), v.copy()
                hi[i] += h
                lo[i] -= h
                fd[i] = (
                    t.loglik_tlg(t.TlgParams(*hi), bank)
                    - t.loglik_tlg(t.TlgParams(*lo), bank)
                ) / (2.0 * h)
            rel = np.abs(analytic - fd) / np.maximum(1.0, np.abs(fd))
            worst = max(worst, float(np.max(rel)))
            check(failures, np.all(rel <= 1e-5),
                  f"score mismatch {np.max(rel):.2e} at {np.round(v, 3)}")
        return f"20 points, worst rel err {worst:.2e}"

    criterion(6, body)


def test_criterion_7_samplers(criterion):
    def body(failures):
        n = 100_000
        crit_one = ks_critical(n)
        crit_two = ks_critical(n, two_sample=True)

        lindley = t.LindleyParams(theta=0.7)
        lg = t.LgParams(theta=0.5, p=0.5)
        cases = [
            ("lindley", t.sample_lindley(lindley, t.make_rng(71), n),
             lambda x: t.lindley_cdf(lindley, x)),
            ("lg", t.sample_lg(lg, t.make_rng(72), n),
             lambda x: t.lg_cdf(lg, x)),
            ("tlg", t.sample_tlg(REFERENCE_TLG, t.make_rng(73), n),
             lambda x: t.tlg_cdf(REFERENCE_TLG, x)),
        ]
        stats = []
        for name, draws, cdf in cases:
            pit = cdf(draws)
            stat = float(kstest(pit, "uniform").statistic)
            stats.append(stat)
            check(failures, stat < crit_one,
                  f"{name} PIT K-S {stat:.5f} >= {crit_one:.5f}")

        rng = t.make_rng(74)
        mixture = t.sample_tlg(REFERENCE_TLG, rng, n)
        inverted = _invert_cdf(
            lambda x: t.tlg_cdf(REFERENCE_TLG, x), rng.random(n)
        )
        two = float(ks_2samp(mixture, inverted).statistic)
        check(failures, two < crit_two,
              f"mixture vs inversion K-S {two:.5f} >= {crit_two:.5f}")
        return (
            f"PIT K-S {max(stats):.5f} < {crit_one:.5f}, "
            f"two-sample {two:.5f} < {crit_two:.5f}"
        )

    criterion(7, body)


def test_criterion_8_order_statistics(criterion):
    def body(failures):
        xs = np.geomspace(0.05, 60.0, 25)
        worst = 0.0
        for params in (REFERENCE_TLG, t.TlgParams(theta=1.0, p=0.3, lam=0.5)):
            for n in range(1, 13):
                for r in sorted({1, (n + 1) // 2, n}):
                    spec = t.OrderSpec(n=n, r=r)
                    diff = float(np.max(np.abs(
                        t.order_stat_pdf(params, spec, xs)
                        - order_stat_pdf_expanded(params, spec, xs)
                    )))
                    worst = max(worst, diff)
                    check(failures, diff <= 1e-10,
                          f"n={n} r={r}: forms differ by {diff:.2e}")
        total = sum(
            t.order_stat_moment(REFERENCE_TLG, t.OrderSpec(n=3, r=r), 1)
            for r in (1, 2, 3)
        )
        mean3 = 3.0 * t.raw_moment(REFERENCE_TLG, 1)
        rel = abs(total - mean3) / mean3
        check(failures, rel <= 1e-5, f"rank-sum identity rel err {rel:.2e}")
        return f"worst form gap {worst:.2e}, rank-sum rel err {rel:.2e}"

    criterion(8, body)


def test_criterion_9_likelihood_dominance(criterion, mle_fits):
    def body(failures):
        fits, _ = mle_fits
        li, lg, tlg = fits["lindley"].loglik, fits["lg"].loglik, fits["tlg"].loglik
        check(failures, tlg > lg, f"tlg {tlg:.4f} not above lg {lg:.4f}")
        check(failures, lg > li, f"lg {lg:.4f} not above lindley {li:.4f}")
        return f"loglik {tlg:.3f} > {lg:.3f} > {li:.3f}"

    criterion(9, body)
