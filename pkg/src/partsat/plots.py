"""Figures written next to the CSV/JSON reports."""

from __future__ import annotations

import math
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.dpi": 120,
}


def _figure(width=5.0, height=None):
    height = height or width * (math.sqrt(5) - 1) / 2
    return plt.subplots(figsize=(width, height))


@matplotlib.rc_context(STYLE)
def plot_sigma_histogram(hist: dict[int, int], path, n: int | None = None, title: str = "") -> Path:
    """Bar chart of assignment counts per sigma; overlays C(n, sigma - n) when ``n`` is given."""
    fig, ax = _figure()
    keys = sorted(hist)
    ax.bar(keys, [hist[k] for k in keys], color="0.6", label="enumerated")
    if n is not None:
        xs = list(range(n, 2 * n + 1))
        ax.plot(xs, [math.comb(n, x - n) for x in xs], "o", color="C3", ms=4, label="binomial")
        ax.legend(frameon=False)
    ax.set_xlabel("true literals (sigma)")
    ax.set_ylabel("assignments")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return _save(fig, path)


BUCKETS = ("AtMin", "AtMax", "OutOfRange", "Between")


@matplotlib.rc_context(STYLE)
def plot_screen_summary(records, path) -> Path:
    """Two panels: files per applicability bucket, and sigma range vs target per file."""
    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 3.4))
    counts = Counter(r.applicability for r in records if r.applicability)
    left.bar(BUCKETS, [counts.get(b, 0) for b in BUCKETS], color="0.5")
    left.set_ylabel("files")
    left.set_title("applicability")

    ok = [r for r in records if r.applicability]
    for i, r in enumerate(ok):
        right.plot([i, i], [r.sigma_min, r.sigma_max], color="0.6", lw=2)
        right.plot(i, r.target, "o", ms=3, color="C3" if r.applicability in ("AtMin", "AtMax") else "C0")
    right.xaxis.set_major_locator(MaxNLocator(integer=True))
    right.set_xlabel("file (path order)")
    right.set_ylabel("true literals")
    right.set_title("sigma range and target")
    fig.tight_layout()
    return _save(fig, path)


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)
    return path
