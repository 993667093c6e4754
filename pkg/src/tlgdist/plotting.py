"""Figure rendering for the CLI report paths.

Every writer saves a PNG next to the corresponding CSV so the delimited
output stays the primary artifact and the figure is a convenience view.
Uses the Agg backend; nothing here opens a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .curves import CurveTable
from .estimation import Dataset

__all__ = ["render_curve_panels", "render_density_overlay", "render_cdf_overlay"]

_DPI = 150


def render_curve_panels(tables: list[CurveTable], path, title: str | None = None) -> None:
    """2x2 panel figure, one curve per panel."""
    fig, axes = plt.subplots(2, 2, figsize=(9, 7))
    for ax, table in zip(axes.ravel(), tables):
        ax.plot(table.x, table.y, lw=1.5)
        ax.set_title(table.name)
        ax.set_xlabel("x")
        ax.grid(alpha=0.3)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def render_density_overlay(data: Dataset, grid: np.ndarray, named_pdfs, path) -> None:
    """Histogram of the sample with fitted densities drawn over it.

    ``named_pdfs`` is a list of (label, values-on-grid) pairs.
    """
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.hist(data.values, bins="auto", density=True, color="0.85",
            edgecolor="0.55", label="data")
    for label, dens in named_pdfs:
        ax.plot(grid, dens, lw=1.8, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def render_cdf_overlay(data: Dataset, named_cdfs, path) -> None:
    """Empirical cdf steps with fitted cdfs overlaid at the data points.

    ``named_cdfs`` is a list of (label, values-at-sorted-data) pairs.
    """
    fig, ax = plt.subplots(figsize=(8, 5))
    n = data.n
    ax.step(data.values, np.arange(1, n + 1) / n, where="post",
            color="0.3", lw=1.2, label="empirical")
    for label, vals in named_cdfs:
        ax.plot(data.values, vals, lw=1.6, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("cdf")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
