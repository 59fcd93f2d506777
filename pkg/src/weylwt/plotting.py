"""Figures for Betti tables."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .resolution import BettiTable  # noqa: E402


def betti_figure(tables: dict, path: str, title: str = "") -> str:
    """Write one Betti heatmap per labelled table side by side; returns ``path``."""
    n = len(tables)
    fig, axes = plt.subplots(1, n, figsize=(3.2 * n + 0.6, 3.4), squeeze=False)
    for ax, (label, table) in zip(axes[0], tables.items()):
        _draw(ax, table, label)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _draw(ax, table: BettiTable, label: str) -> None:
    ks, ds, grid = table.matrix()
    ax.imshow(grid, cmap="Blues", origin="upper", aspect="auto")
    top = max((x for row in grid for x in row), default=0)
    for r, row in enumerate(grid):
        for c, x in enumerate(row):
            if x:
                color = "white" if x > top / 2 else "black"
                ax.text(c, r, str(x), ha="center", va="center", fontsize=8, color=color)
    ax.set_xticks(range(len(ds)), [str(d) for d in ds])
    ax.set_yticks(range(len(ks)), [str(k) for k in ks])
    ax.set_xlabel("internal degree")
    ax.set_ylabel("homological degree")
    ax.set_title(f"S_{label}")
