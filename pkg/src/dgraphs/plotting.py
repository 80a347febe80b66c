"""Figures for benchmark results (matplotlib, headless)."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bench import Fit, Row  # noqa: E402

STYLE = {
    "figure.figsize": (5.0, 3.4),
    "font.size": 9,
    "axes.linewidth": 0.6,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "lines.linewidth": 1.2,
    "lines.markersize": 4,
    "savefig.bbox": "tight",
}


def bench_figure(rows: Sequence[Row], fit: Fit, title: str = ""):
    """Log-log scatter of construction time with the fitted power law."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ns = [r.n for r in rows]
        ms = [max(r.millis, 1e-3) for r in rows]
        ax.scatter(ns, ms, s=14, color="#2b8cbe", label="measured", zorder=3)
        lo, hi = min(ns), max(ns)
        xs = [lo * (hi / lo) ** (k / 40) for k in range(41)] if hi > lo else [lo]
        ax.plot(xs, [math.exp(fit.intercept) * x ** fit.slope for x in xs], color="#08589e",
                label=f"fit: slope {fit.slope:.2f}, R² {fit.r2:.3f}")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("vertices n")
        ax.set_ylabel("construction time (ms)")
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        fig.tight_layout()
    return fig


def save_bench_figure(rows: Sequence[Row], fit: Fit, stem, title: str = "") -> list[Path]:
    """Write ``stem.svg`` and ``stem.png``; returns the paths."""
    stem = Path(stem)
    fig = bench_figure(rows, fit, title)
    out = []
    for ext in ("svg", "png"):
        path = stem.with_suffix("." + ext)
        fig.savefig(path, dpi=150)
        out.append(path)
    plt.close(fig)
    return out
