"""Curve tables: (x, y) grids of the distribution functions for export to
CSV, plus the empirical cdf used in comparison overlays.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .distributions import TlgParams, tlg_cdf, tlg_hazard, tlg_pdf, tlg_sf
from .estimation import Dataset, _model_cdf

__all__ = [
    "CurveTable",
    "curve_grid",
    "build_curves",
    "empirical_cdf",
    "write_curves_csv",
    "write_overlay_csv",
]

CURVE_NAMES = ("pdf", "cdf", "sf", "hazard")


@dataclass(frozen=True)
class CurveTable:
    """A named function sampled on a grid."""

    name: str
    x: np.ndarray
    y: np.ndarray


def curve_grid(x_min: float, x_max: float, points: int) -> np.ndarray:
    """Evenly spaced evaluation grid with basic sanity checks."""
    if points < 2:
        raise ValueError(f"grid needs at least 2 points, got {points!r}")
    if not x_min < x_max:
        raise ValueError(f"x_min must be below x_max, got [{x_min!r}, {x_max!r}]")
    if x_min < 0.0:
        raise ValueError(f"x_min must be non-negative, got {x_min!r}")
    return np.linspace(float(x_min), float(x_max), int(points))


def build_curves(params: TlgParams, grid: np.ndarray) -> list[CurveTable]:
    """Sample pdf, cdf, sf, and hazard on the grid."""
    fns = dict(pdf=tlg_pdf, cdf=tlg_cdf, sf=tlg_sf, hazard=tlg_hazard)
    return [CurveTable(name, grid, np.asarray(fns[name](params, grid))) for name in CURVE_NAMES]


def empirical_cdf(data: Dataset) -> CurveTable:
    """Right-continuous empirical cdf at the sorted sample points (i/n)."""
    n = data.n
    return CurveTable("empirical", data.values, np.arange(1, n + 1) / n)


def write_curves_csv(path, tables: list[CurveTable]) -> None:
    """Write curves sharing one grid as columns x, <name>, <name>, ..."""
    grid = tables[0].x
    for t in tables[1:]:
        if t.x.shape != grid.shape or not np.array_equal(t.x, grid):
            raise ValueError("curve tables must share one grid")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x"] + [t.name for t in tables])
        for i in range(grid.size):
            writer.writerow([repr(float(grid[i]))] + [repr(float(t.y[i])) for t in tables])


def write_overlay_csv(path, data: Dataset, fits) -> None:
    """Write the cdf overlay aligned to the data: x, empirical, then one
    fitted-cdf column per fit."""
    ecdf = empirical_cdf(data)
    columns = [(fit.model, _model_cdf(fit.model, fit.estimates, data.values)) for fit in fits]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "empirical"] + [name for name, _ in columns])
        for i in range(data.n):
            row = [repr(float(data.values[i])), repr(float(ecdf.y[i]))]
            row += [repr(float(col[i])) for _, col in columns]
            writer.writerow(row)
