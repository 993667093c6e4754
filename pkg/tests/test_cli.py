"""End-to-end command-line behavior: formats, files, and exit codes."""

import csv
import io
import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

import tlgdist as t
from tlgdist.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# fit
# ---------------------------------------------------------------------------

def test_fit_text_reproduces_the_reference_table(capsys):
    code, out, _ = run(capsys, "fit", "--model", "tlg")
    assert code == 0
    assert "theta" in out and "lam" in out
    assert "0.1712" in out
    assert "-loglik:  317.2070" in out
    assert "-2loglik: 634.4139" in out


def test_fit_json_schema_and_values(capsys):
    code, out, _ = run(capsys, "fit", "--model", "lindley", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["model"] == "lindley"
    assert payload["method"] == "mle"
    assert payload["converged"] is True
    assert payload["n"] == 100
    assert payload["estimates"]["theta"] == pytest.approx(0.186, abs=0.005)
    assert payload["neg_loglik"] == pytest.approx(319.037, abs=0.05)
    assert payload["ci_level"] == 0.95
    lo, hi = payload["ci"]["theta"]
    assert lo < payload["estimates"]["theta"] < hi


def test_fit_csv_parses_back_to_the_same_numbers(capsys):
    code, out, _ = run(capsys, "fit", "--model", "lindley", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    row = rows[0]
    assert row["param"] == "theta"
    assert float(row["estimate"]) == pytest.approx(0.186, abs=0.005)
    assert float(row["neg2_loglik"]) == pytest.approx(638.07, abs=0.2)


def test_fit_level_flag_changes_the_interval(capsys):
    _, out_default, _ = run(capsys, "fit", "--model", "lindley", "--format", "json")
    _, out_wide, _ = run(
        capsys, "fit", "--model", "lindley", "--format", "json", "--level", "0.5"
    )
    ci_default = json.loads(out_default)["ci"]["theta"]
    ci_wide = json.loads(out_wide)["ci"]["theta"]
    assert ci_wide[1] - ci_wide[0] < ci_default[1] - ci_default[0]


def test_fit_lse_reports_no_standard_errors(capsys):
    code, out, _ = run(capsys, "fit", "--model", "tlg", "--method", "lse")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.startswith("theta")]
    assert lines and "-" in lines[0]


def test_unconverged_fit_exits_three(capsys):
    code, _, err = run(
        capsys, "fit", "--model", "tlg", "--method", "lse",
        "--starts", "1", "--max-iter", "1",
    )
    assert code == 3
    assert "did not converge" in err


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------

def test_compare_text_table_lists_all_models(capsys):
    code, out, _ = run(capsys, "compare")
    assert code == 0
    for token in ("lindley", "lg", "tlg", "aicc"):
        assert token in out
    assert "634.4139" in out


def test_compare_csv_is_sorted_by_aic(capsys):
    code, out, _ = run(capsys, "compare", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    aics = [float(r["aic"]) for r in rows]
    assert aics == sorted(aics)
    assert {r["model"] for r in rows} == {"lindley", "lg", "tlg"}


def test_compare_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "compare", "--models", "lindley", "--format", "json")
    _, second, _ = run(capsys, "compare", "--models", "lindley", "--format", "json")
    assert first == second
    payload = json.loads(first)
    assert payload[0]["ks"] == pytest.approx(0.0677, abs=0.005)


def test_compare_subset_and_unknown_model(capsys):
    code, out, _ = run(capsys, "compare", "--models", "lindley,lg", "--format", "csv")
    assert code == 0
    assert len(list(csv.DictReader(io.StringIO(out)))) == 2
    code, _, err = run(capsys, "compare", "--models", "bogus")
    assert code == 1
    assert "unknown model" in err


def test_compare_out_dir_writes_overlays_and_figures(capsys, tmp_path):
    out_dir = tmp_path / "report"
    code, _, err = run(capsys, "compare", "--out-dir", str(out_dir))
    assert code == 0
    density_csv = out_dir / "density_overlay.csv"
    cdf_csv = out_dir / "cdf_overlay.csv"
    assert density_csv.exists() and cdf_csv.exists()
    for name in ("density_overlay.png", "cdf_overlay.png"):
        payload = (out_dir / name).read_bytes()
        assert payload[:8] == b"\x89PNG\r\n\x1a\n"
        assert f"wrote {out_dir / name}" in err
    with open(cdf_csv, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "empirical", "lindley", "lg", "tlg"]
    assert len(rows) == 101
    assert float(rows[-1][1]) == 1.0


# ---------------------------------------------------------------------------
# sample
# ---------------------------------------------------------------------------

def test_sample_text_is_seed_deterministic(capsys):
    args = ("sample", "--model", "tlg", "--theta", "0.5", "--p", "0.3",
            "--lambda", "-0.6", "-n", "5", "--seed", "7")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert len(first.splitlines()) == 5
    assert all(float(v) > 0.0 for v in first.split())


def test_sample_json_includes_params_and_seed(capsys):
    code, out, _ = run(
        capsys, "sample", "--model", "lg", "--theta", "0.5", "--p", "0.3",
        "-n", "3", "--seed", "11", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["model"] == "lg"
    assert payload["params"] == {"theta": 0.5, "p": 0.3, "lam": None}
    assert payload["seed"] == 11
    assert len(payload["values"]) == 3


def test_sample_flags_must_match_the_model(capsys):
    code, _, err = run(
        capsys, "sample", "--model", "lindley", "--theta", "1.0",
        "--p", "0.3", "-n", "2",
    )
    assert code == 1
    assert "do not apply" in err


def test_sample_rejects_nonpositive_n(capsys):
    code, _, err = run(capsys, "sample", "--theta", "1.0", "-n", "0")
    assert code == 1
    assert "positive integer" in err


def test_sample_roundtrip_recovers_the_generating_parameters(capsys, tmp_path):
    out_file = tmp_path / "draws.csv"
    code, _, err = run(
        capsys, "sample", "--model", "tlg", "--theta", "0.17123",
        "--p", "0.65679", "--lambda", "-0.95436",
        "-n", "10000", "--seed", "314", "--format", "csv", "--out", str(out_file),
    )
    assert code == 0
    assert f"wrote {out_file}" in err
    code, out, _ = run(capsys, "fit", str(out_file), "--model", "tlg", "--format", "json")
    assert code == 0
    est = json.loads(out)["estimates"]
    assert est["theta"] == pytest.approx(0.17123, abs=0.02)
    assert est["p"] == pytest.approx(0.65679, abs=0.10)
    assert est["lam"] == pytest.approx(-0.95436, abs=0.10)


# ---------------------------------------------------------------------------
# moments, order-stat, curves
# ---------------------------------------------------------------------------

def test_moments_json_matches_the_library(capsys):
    code, out, _ = run(
        capsys, "moments", "--theta", "1.0", "--p", "0.3", "--lambda", "0.5",
        "--mgf-at", "0.2", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    ms = t.skewness_kurtosis(t.TlgParams(theta=1.0, p=0.3, lam=0.5))
    assert payload["mu1"] == pytest.approx(ms.mu1, rel=1e-12)
    assert payload["skewness"] == pytest.approx(ms.skewness, rel=1e-12)
    assert payload["mgf"]["0.2"] == pytest.approx(
        t.mgf(t.TlgParams(theta=1.0, p=0.3, lam=0.5), 0.2), rel=1e-12
    )


def test_moments_rejects_mgf_argument_at_the_domain_edge(capsys):
    code, _, err = run(
        capsys, "moments", "--theta", "0.5", "--p", "0.0", "--lambda", "0.0",
        "--mgf-at", "0.5",
    )
    assert code == 1
    assert "error" in err


def test_order_stat_text_and_validation(capsys):
    code, out, _ = run(
        capsys, "order-stat", "--theta", "0.17123", "--p", "0.65679",
        "--lambda", "-0.95436", "--n", "5", "--r", "2",
    )
    assert code == 0
    assert "E[X^1]" in out and "skewness" in out
    code, _, _ = run(
        capsys, "order-stat", "--theta", "1.0", "--n", "2", "--r", "3",
    )
    assert code == 1


def test_curves_writes_csv_and_png(capsys, tmp_path):
    code, out, _ = run(
        capsys, "curves", "--theta", "0.17123", "--p", "0.65679",
        "--lambda", "-0.95436", "--x-max", "40", "--points", "101",
        "--out-dir", str(tmp_path),
    )
    assert code == 0
    csv_path = tmp_path / "curves.csv"
    png_path = tmp_path / "curves.png"
    assert f"wrote {csv_path}" in out and f"wrote {png_path}" in out
    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "pdf", "cdf", "sf", "hazard"]
    assert len(rows) == 102
    body = np.array([[float(v) for v in row] for row in rows[1:]])
    assert np.all(np.diff(body[:, 2]) >= 0.0)
    assert_allclose(body[:, 2] + body[:, 3], 1.0, atol=1e-12)


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_usage_errors_exit_one():
    with pytest.raises(SystemExit) as excinfo:
        main(["fit", "--model", "weibull"])
    assert excinfo.value.code == 1
    with pytest.raises(SystemExit) as excinfo:
        main(["no-such-command"])
    assert excinfo.value.code == 1


def test_missing_data_file_exits_two(capsys):
    code, _, err = run(capsys, "fit", "/no/such/file.csv")
    assert code == 2
    assert "data error" in err


def test_bad_optimizer_options_exit_one(capsys):
    code, _, err = run(capsys, "fit", "--max-iter", "0")
    assert code == 1
    assert "error" in err
