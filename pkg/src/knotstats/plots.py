"""Matplotlib figure rendering for the report path.

All figures are written as SVG next to the delimited output.  Output is
deterministic: a fixed hash salt, no embedded creation date, and seeded
downsampling for large scatters.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .dataset import KnotTable
from .stats import DensityCurve, SigmoidFit, sigmoid_eval

plt.rcParams["svg.hashsalt"] = "knotstats"

#: Scatter plots above this many points are downsampled (fits still use
#: the full data).
SCATTER_CAP = 100_000

_SAVE_KW = {"format": "svg", "metadata": {"Date": None}}


def _downsample(xs, ys, seed: int):
    xs = np.asarray(xs)
    ys = np.asarray(ys)
    if xs.size <= SCATTER_CAP:
        return xs, ys, False
    rng = np.random.default_rng(seed)
    idx = rng.choice(xs.size, SCATTER_CAP, replace=False)
    idx.sort()
    return xs[idx], ys[idx], True


def scatter_volume_fit(table: KnotTable, crossings: int, y_field: str,
                       fits, path, log=math.log, seed: int = 0) -> Path:
    """Volume vs log-invariant scatter for one crossing number.

    Alternating and non-alternating knots are drawn separately with
    their regression lines from `fits` (keys like "12a").
    """
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for alt, color, label in ((False, "tab:blue", "non-alternating"),
                              (True, "tab:orange", "alternating")):
        recs = [r for r in table.group(crossings, alt) if r.hyperbolic]
        if not recs:
            continue
        xs = [r.volume for r in recs]
        ys = [log(getattr(r, y_field)) for r in recs]
        xs_p, ys_p, sampled = _downsample(xs, ys, seed)
        ax.scatter(xs_p, ys_p, s=4, alpha=0.4, color=color,
                   label=label + (" (sampled)" if sampled else ""))
        key = f"{crossings}{'a' if alt else 'n'}"
        fit = fits.get(key)
        if fit is not None:
            grid = np.linspace(min(xs), max(xs), 50)
            ax.plot(grid, fit.slope * grid + fit.intercept, color=color, lw=1.2)
    ax.set_xlabel("hyperbolic volume")
    ax.set_ylabel(f"log {y_field}")
    ax.set_title(f"{crossings}-crossing knots")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path


def histogram_figure(table: KnotTable, field: str, path, bins=60) -> Path:
    """Per-crossing-number probability distributions of one invariant."""
    groups = sorted({c for c, _ in table.groups()})
    ncols = min(3, max(1, len(groups)))
    nrows = (len(groups) + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(4 * ncols, 3 * nrows),
                             squeeze=False)
    for i, c in enumerate(groups):
        ax = axes[i // ncols][i % ncols]
        for alt, color, label in ((False, "tab:blue", "non-alternating"),
                                  (True, "tab:orange", "alternating")):
            values = [getattr(r, field) for r in table.group(c, alt)
                      if getattr(r, field) is not None]
            if len(values) >= 2 and max(values) > min(values):
                ax.hist(values, bins=bins, density=True, alpha=0.5,
                        color=color, label=label)
        ax.set_title(f"c = {c}", fontsize=9)
        ax.set_xlabel(field, fontsize=8)
        ax.legend(fontsize=7)
    for j in range(len(groups), nrows * ncols):
        axes[j // ncols][j % ncols].axis("off")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path


def density_figure(curve: DensityCurve, fit: SigmoidFit | None, path,
                   title: str = "") -> Path:
    """Step plot of the density curve with the fitted sigmoid overlay."""
    xs, ys = curve.finite_points()
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.step(xs, ys, where="post", lw=1.0, label=f"f(x), d={curve.cutoff}")
    if fit is not None:
        grid = np.linspace(float(xs.min()), float(xs.max()), 400)
        ax.plot(grid, [sigmoid_eval(fit.params, x) for x in grid],
                color="tab:red", lw=1.2, label="best-fit sigmoid")
    ax.set_xlabel("hyperbolic volume")
    ax.set_ylabel("fraction with small rank")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path
