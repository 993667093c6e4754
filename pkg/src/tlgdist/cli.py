"""Command-line interface.

Subcommands: fit, compare, sample, moments, order-stat, curves.  Text output
prints fixed four-decimal tables; csv and json render the same numbers at
full precision.  Exit codes: 0 success, 1 usage or domain error, 2 data
error, 3 convergence failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .curves import build_curves, curve_grid, write_curves_csv, write_overlay_csv
from .datasets import bank_waiting_times, ingest_csv
from .distributions import LgParams, LindleyParams, TlgParams, tlg_pdf
from .estimation import (
    MODELS,
    Dataset,
    FitResult,
    OptimizerOptions,
    confidence_intervals,
    fit_lse,
    fit_mle,
    fit_wlse,
    param_names,
    _model_cdf,
)
from .exceptions import ConvergenceError, DataError
from .model_select import compare_models
from .moments import SeriesConfig, mgf, skewness_kurtosis
from .order_stats import OrderSpec, order_stat_moment, order_stat_shape
from .sampling import make_rng, sample_lg, sample_lindley, sample_tlg

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage problems; this CLI reserves
    2 for data errors, so remap usage failures to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _f4(x: float) -> str:
    return f"{x:.4f}"


def _render_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def _csv_string(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _load_data(args) -> Dataset:
    if args.data is None:
        return bank_waiting_times()
    return ingest_csv(args.data)


def _optimizer_options(args) -> OptimizerOptions:
    return OptimizerOptions(starts=args.starts, max_iter=args.max_iter, ftol=args.ftol)


def _series_config(args) -> SeriesConfig:
    return SeriesConfig(max_j=args.max_j, tol=args.series_tol)


def _tlg_equivalent(fit: FitResult) -> TlgParams:
    """Embed a fitted model into the TLG parameter space for curve drawing."""
    est = fit.estimates
    if fit.model == "lindley":
        return TlgParams(est[0], 0.0, 0.0)
    if fit.model == "lg":
        return TlgParams(est[0], est[1], 0.0)
    return TlgParams(est[0], est[1], est[2])


# ---------------------------------------------------------------------------
# fit
# ---------------------------------------------------------------------------

def _cmd_fit(args) -> int:
    data = _load_data(args)
    opts = _optimizer_options(args)
    runner = {"mle": fit_mle, "lse": fit_lse, "wlse": fit_wlse}[args.method]
    fit = runner(args.model, data, opts)
    names = param_names(args.model)
    cis = confidence_intervals(fit, args.level) if fit.stderr is not None else None

    if args.format == "json":
        payload = {
            "model": fit.model,
            "method": fit.method,
            "n": data.n,
            "converged": fit.converged,
            "iterations": fit.iterations,
            "at_boundary": fit.at_boundary,
            "estimates": {nm: float(v) for nm, v in zip(names, fit.estimates)},
            "stderr": None if fit.stderr is None else {
                nm: float(v) for nm, v in zip(names, fit.stderr)
            },
            "cov": None if fit.cov is None else [
                [float(v) for v in row] for row in fit.cov
            ],
            "ci_level": args.level,
            "ci": None if cis is None else {
                nm: [lo, hi] for nm, (lo, hi) in zip(names, cis)
            },
            "loglik": fit.loglik,
            "neg_loglik": -fit.loglik,
            "neg2_loglik": -2.0 * fit.loglik,
        }
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        rows = []
        for idx, nm in enumerate(names):
            rows.append([
                fit.model, fit.method, data.n, fit.converged, fit.iterations, nm,
                repr(float(fit.estimates[idx])),
                "" if fit.stderr is None else repr(float(fit.stderr[idx])),
                "" if cis is None else repr(cis[idx][0]),
                "" if cis is None else repr(cis[idx][1]),
                repr(fit.loglik), repr(-2.0 * fit.loglik),
            ])
        print(_csv_string(
            ["model", "method", "n", "converged", "iterations", "param",
             "estimate", "stderr", "ci_lo", "ci_hi", "loglik", "neg2_loglik"],
            rows,
        ), end="")
    else:
        print(f"model: {fit.model}  method: {fit.method}  n: {data.n}")
        print(
            f"converged: {'yes' if fit.converged else 'no'}  "
            f"iterations: {fit.iterations}  "
            f"boundary: {'yes' if fit.at_boundary else 'no'}"
        )
        rows = []
        for idx, nm in enumerate(names):
            rows.append([
                nm,
                _f4(fit.estimates[idx]),
                "-" if fit.stderr is None else _f4(fit.stderr[idx]),
                "-" if cis is None else f"[{_f4(cis[idx][0])}, {_f4(cis[idx][1])}]",
            ])
        level_pct = f"{100.0 * args.level:g}%"
        print(_render_table(["parameter", "estimate", "std.err", f"ci {level_pct}"], rows))
        print(f"-loglik:  {_f4(-fit.loglik)}")
        print(f"-2loglik: {_f4(-2.0 * fit.loglik)}")

    if not fit.converged:
        print("warning: optimizer did not converge", file=sys.stderr)
        return 3
    return 0


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------

def _cmd_compare(args) -> int:
    data = _load_data(args)
    opts = _optimizer_options(args)
    models = [m.strip() for m in args.models.split(",") if m.strip()]
    if not models:
        raise ValueError("--models must name at least one model")
    for m in models:
        if m not in MODELS:
            raise ValueError(f"unknown model {m!r}; expected one of {MODELS}")
    fits = {m: fit_mle(m, data, opts) for m in models}
    rows = compare_models(list(fits.values()), data)

    if args.format == "json":
        payload = [
            {
                "model": r.model, "k": r.k, "ks": r.ks, "neg2_loglik": r.neg2ll,
                "aic": r.aic, "aicc": r.aicc, "ranks": r.ranks,
            }
            for r in rows
        ]
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        out = [
            [r.model, r.k, repr(r.ks), repr(r.neg2ll), repr(r.aic), repr(r.aicc),
             r.ranks["ks"], r.ranks["neg2ll"], r.ranks["aic"], r.ranks["aicc"]]
            for r in rows
        ]
        print(_csv_string(
            ["model", "k", "ks", "neg2_loglik", "aic", "aicc",
             "rank_ks", "rank_neg2ll", "rank_aic", "rank_aicc"],
            out,
        ), end="")
    else:
        table = [
            [r.model, str(r.k), _f4(r.ks), _f4(r.neg2ll), _f4(r.aic), _f4(r.aicc),
             str(r.ranks["ks"]), str(r.ranks["neg2ll"]),
             str(r.ranks["aic"]), str(r.ranks["aicc"])]
            for r in rows
        ]
        print(_render_table(
            ["model", "k", "ks", "-2loglik", "aic", "aicc",
             "r.ks", "r.-2ll", "r.aic", "r.aicc"],
            table,
        ))

    if args.out_dir is not None:
        _write_compare_files(args, data, [fits[m] for m in models])

    if not all(f.converged for f in fits.values()):
        print("warning: at least one fit did not converge", file=sys.stderr)
        return 3
    return 0


def _write_compare_files(args, data: Dataset, fits: list[FitResult]) -> None:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    x_max = args.x_max if args.x_max is not None else 1.05 * float(data.values[-1])
    grid = curve_grid(args.x_min, x_max, args.points)

    named_pdfs = [(f.model, tlg_pdf(_tlg_equivalent(f), grid)) for f in fits]
    density_csv = out_dir / "density_overlay.csv"
    with open(density_csv, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x"] + [name for name, _ in named_pdfs])
        for i in range(grid.size):
            writer.writerow([repr(float(grid[i]))]
                            + [repr(float(d[i])) for _, d in named_pdfs])

    cdf_csv = out_dir / "cdf_overlay.csv"
    write_overlay_csv(cdf_csv, data, fits)

    from . import plotting

    plotting.render_density_overlay(
        data, grid, named_pdfs, out_dir / "density_overlay.png"
    )
    named_cdfs = [
        (f.model, _model_cdf(f.model, f.estimates, data.values)) for f in fits
    ]
    plotting.render_cdf_overlay(data, named_cdfs, out_dir / "cdf_overlay.png")
    for path in (density_csv, cdf_csv,
                 out_dir / "density_overlay.png", out_dir / "cdf_overlay.png"):
        print(f"wrote {path}", file=sys.stderr)


# ---------------------------------------------------------------------------
# sample
# ---------------------------------------------------------------------------

def _sample_params(args):
    if args.model == "lindley":
        if args.p is not None or args.lam is not None:
            raise ValueError("--p and --lambda do not apply to the lindley model")
        return LindleyParams(args.theta)
    if args.model == "lg":
        if args.lam is not None:
            raise ValueError("--lambda does not apply to the lg model")
        return LgParams(args.theta, 0.0 if args.p is None else args.p)
    return TlgParams(
        args.theta,
        0.0 if args.p is None else args.p,
        0.0 if args.lam is None else args.lam,
    )


def _cmd_sample(args) -> int:
    if args.n < 1:
        raise ValueError(f"-n must be a positive integer, got {args.n}")
    params = _sample_params(args)
    rng = make_rng(args.seed)
    if args.model == "lindley":
        draws = sample_lindley(params, rng, args.n)
    elif args.model == "lg":
        draws = sample_lg(params, rng, args.n)
    else:
        draws = sample_tlg(params, rng, args.n)

    if args.format == "json":
        text = json.dumps({
            "model": args.model,
            "params": {"theta": args.theta, "p": args.p, "lam": args.lam},
            "n": args.n,
            "seed": args.seed,
            "values": [float(v) for v in draws],
        }, indent=2) + "\n"
    elif args.format == "csv":
        text = "x\n" + "".join(repr(float(v)) + "\n" for v in draws)
    else:
        text = "".join(repr(float(v)) + "\n" for v in draws)

    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

def _cmd_moments(args) -> int:
    params = TlgParams(args.theta, args.p, args.lam)
    cfg = _series_config(args)
    ms = skewness_kurtosis(params, cfg)
    mgf_values = [(t, mgf(params, t, cfg)) for t in (args.mgf_at or [])]

    quantities = [
        ("mu1", ms.mu1), ("mu2", ms.mu2), ("mu3", ms.mu3), ("mu4", ms.mu4),
        ("variance", ms.variance),
        ("skewness", ms.skewness), ("kurtosis", ms.kurtosis),
    ]
    if args.format == "json":
        payload = {
            "params": {"theta": args.theta, "p": args.p, "lam": args.lam},
            **{name: val for name, val in quantities},
            "mgf": {repr(t): v for t, v in mgf_values},
        }
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        rows = [[name, repr(val)] for name, val in quantities]
        rows += [[f"mgf({t!r})", repr(v)] for t, v in mgf_values]
        print(_csv_string(["quantity", "value"], rows), end="")
    else:
        print(f"moments of tlg(theta={args.theta:g}, p={args.p:g}, lam={args.lam:g})")
        rows = [[name, _f4(val)] for name, val in quantities]
        rows += [[f"mgf({t:g})", _f4(v)] for t, v in mgf_values]
        print(_render_table(["quantity", "value"], rows))
    return 0


# ---------------------------------------------------------------------------
# order-stat
# ---------------------------------------------------------------------------

def _cmd_order_stat(args) -> int:
    params = TlgParams(args.theta, args.p, args.lam)
    spec = OrderSpec(args.n, args.r)
    moment = order_stat_moment(params, spec, args.k)
    shape = order_stat_shape(params, spec)
    quantities = [
        (f"E[X^{args.k}]", moment),
        ("mean", shape.mu1),
        ("variance", shape.variance),
        ("skewness", shape.skewness),
        ("kurtosis", shape.kurtosis),
    ]
    if args.format == "json":
        payload = {
            "params": {"theta": args.theta, "p": args.p, "lam": args.lam},
            "n": args.n, "r": args.r, "k": args.k,
            "moment": moment,
            "mean": shape.mu1, "variance": shape.variance,
            "skewness": shape.skewness, "kurtosis": shape.kurtosis,
        }
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        print(_csv_string(["quantity", "value"],
                          [[name, repr(val)] for name, val in quantities]), end="")
    else:
        print(f"order statistic r={args.r} of n={args.n}, "
              f"tlg(theta={args.theta:g}, p={args.p:g}, lam={args.lam:g})")
        print(_render_table(["quantity", "value"],
                            [[name, _f4(val)] for name, val in quantities]))
    return 0


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

def _cmd_curves(args) -> int:
    params = TlgParams(args.theta, args.p, args.lam)
    grid = curve_grid(args.x_min, args.x_max, args.points)
    tables = build_curves(params, grid)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "curves.csv"
    write_curves_csv(csv_path, tables)
    png_path = out_dir / "curves.png"

    from . import plotting

    plotting.render_curve_panels(
        tables, png_path,
        title=f"tlg(theta={args.theta:g}, p={args.p:g}, lam={args.lam:g})",
    )
    print(f"wrote {csv_path}")
    print(f"wrote {png_path}")
    return 0


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------

def _add_format(p) -> None:
    p.add_argument("--format", choices=("text", "csv", "json"), default="text",
                   help="output format (default text)")


def _add_data(p) -> None:
    p.add_argument("data", nargs="?", default=None,
                   help="input CSV (one value per line or comma-separated, "
                        "optional header); defaults to the bundled sample")


def _add_optimizer(p) -> None:
    p.add_argument("--starts", type=int, default=8,
                   help="number of deterministic optimizer restarts (default 8)")
    p.add_argument("--max-iter", type=int, default=5000,
                   help="iteration cap per start (default 5000)")
    p.add_argument("--ftol", type=float, default=1e-10,
                   help="objective tolerance (default 1e-10)")


def _add_params(p, default_p: float | None = 0.0, default_lam: float | None = 0.0) -> None:
    p.add_argument("--theta", type=float, required=True, help="rate-like shape, > 0")
    p.add_argument("--p", type=float, default=default_p,
                   help="compounding parameter in (-1, 1)")
    p.add_argument("--lambda", dest="lam", type=float, default=default_lam,
                   help="transmutation coefficient in [-1, 1]")


def _add_series(p) -> None:
    p.add_argument("--max-j", type=int, default=500,
                   help="series truncation bound (default 500)")
    p.add_argument("--series-tol", type=float, default=1e-12,
                   help="series block tolerance (default 1e-12)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tlg",
        description="Transmuted Lindley-geometric distribution toolkit: "
                    "fitting, model comparison, sampling, moments, order "
                    "statistics, and curve export.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_fit = sub.add_parser("fit", help="fit one model to a sample")
    _add_data(p_fit)
    p_fit.add_argument("--model", choices=MODELS, default="tlg")
    p_fit.add_argument("--method", choices=("mle", "lse", "wlse"), default="mle")
    p_fit.add_argument("--level", type=float, default=0.95,
                       help="confidence level for intervals (default 0.95)")
    _add_optimizer(p_fit)
    _add_format(p_fit)
    p_fit.set_defaults(func=_cmd_fit)

    p_cmp = sub.add_parser("compare", help="fit several models and rank them")
    _add_data(p_cmp)
    p_cmp.add_argument("--models", default="lindley,lg,tlg",
                       help="comma-separated subset of lindley,lg,tlg")
    p_cmp.add_argument("--out-dir", default=None,
                       help="where to write overlay CSVs and figures "
                            "(omit to print the table only)")
    p_cmp.add_argument("--x-min", type=float, default=0.0)
    p_cmp.add_argument("--x-max", type=float, default=None,
                       help="overlay grid upper end (default 1.05 * max datum)")
    p_cmp.add_argument("--points", type=int, default=401)
    _add_optimizer(p_cmp)
    _add_format(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    p_sam = sub.add_parser("sample", help="draw random variates")
    p_sam.add_argument("--model", choices=MODELS, default="tlg")
    p_sam.add_argument("--theta", type=float, required=True)
    p_sam.add_argument("--p", type=float, default=None)
    p_sam.add_argument("--lambda", dest="lam", type=float, default=None)
    p_sam.add_argument("-n", type=int, required=True, help="number of draws")
    p_sam.add_argument("--seed", type=int, default=None,
                       help="64-bit seed; omit for a fresh stream")
    p_sam.add_argument("--out", default=None, help="write to a file instead of stdout")
    _add_format(p_sam)
    p_sam.set_defaults(func=_cmd_sample)

    p_mom = sub.add_parser("moments", help="series moments, skewness, kurtosis, mgf")
    _add_params(p_mom)
    _add_series(p_mom)
    p_mom.add_argument("--mgf-at", type=float, action="append", default=None,
                       metavar="T", help="also evaluate the mgf at T (repeatable)")
    _add_format(p_mom)
    p_mom.set_defaults(func=_cmd_moments)

    p_ord = sub.add_parser("order-stat", help="order-statistic moments and shape")
    _add_params(p_ord)
    p_ord.add_argument("--n", type=int, required=True, help="sample size")
    p_ord.add_argument("--r", type=int, required=True, help="rank, 1 <= r <= n")
    p_ord.add_argument("--k", type=int, default=1, help="moment order (default 1)")
    _add_format(p_ord)
    p_ord.set_defaults(func=_cmd_order_stat)

    p_cur = sub.add_parser("curves", help="export pdf/cdf/sf/hazard tables and figure")
    _add_params(p_cur)
    p_cur.add_argument("--x-min", type=float, default=0.0)
    p_cur.add_argument("--x-max", type=float, required=True)
    p_cur.add_argument("--points", type=int, default=401)
    p_cur.add_argument("--out-dir", default=".",
                       help="output directory (default current)")
    p_cur.set_defaults(func=_cmd_curves)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
