"""Figures written alongside the command-line reports.

Angulations are drawn in one fundamental domain of the strip cover: the
outer boundary is the bottom edge, the inner boundary the top edge, and
the left and right sides are glued.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .angulation import Angulation  # noqa: E402
from .geometry import OuterPeripheral, Spanning  # noqa: E402

__all__ = ["draw_angulation", "draw_angulations"]


def _draw(ax, a: Angulation, title: str | None = None) -> None:
    cfg = a.cfg
    n_out, n_in = cfg.n_out, cfg.n_in
    ax.plot([0, 1], [0, 0], color="black", lw=1.5)
    ax.plot([0, 1], [1, 1], color="black", lw=1.5)
    ax.plot([0, 0], [0, 1], color="grey", lw=0.5, ls=":")
    ax.plot([1, 1], [0, 1], color="grey", lw=0.5, ls=":")
    ax.scatter(np.arange(n_out) / n_out, np.zeros(n_out), s=12, color="black", zorder=3)
    ax.scatter(np.arange(n_in) / n_in, np.ones(n_in), s=12, color="black", zorder=3)
    colours = plt.cm.tab10.colors
    for idx, d in enumerate(a.diagonals):
        colour = colours[idx % len(colours)]
        if isinstance(d, Spanning):
            x0, x1 = d.u / n_out, -d.v / n_in
            xs = np.array([x0, x1])
            ys = np.array([0.0, 1.0])
            for t in range(-int(np.ceil(xs.max())) - 1, int(np.ceil(-xs.min())) + 2):
                ax.plot(xs + t, ys, color=colour, lw=1.2)
            mid = (x0 + x1) / 2
            ax.annotate(str(idx), ((mid % 1.0), 0.5), fontsize=7, color=colour)
        else:
            outer = isinstance(d, OuterPeripheral)
            n = n_out if outer else n_in
            start = d.i / n if outer else -d.i / n
            end = (d.i + d.k - 1) / n if outer else -(d.i + d.k - 1) / n
            theta = np.linspace(0, np.pi, 60)
            centre, radius = (start + end) / 2, abs(end - start) / 2
            height = min(0.45, 0.15 + 0.08 * d.k / n)
            ys = np.sin(theta) * height
            ys = ys if outer else 1 - ys
            xs = centre + radius * np.cos(theta)
            for t in (-2, -1, 0, 1, 2):
                ax.plot(xs + t, ys, color=colour, lw=1.2)
            ax.annotate(str(idx), (centre % 1.0, ys[30]), fontsize=7, color=colour)
    ax.set_xlim(0, 1)
    ax.set_ylim(-0.08, 1.08)
    ax.set_xticks([])
    ax.set_yticks([])
    if title:
        ax.set_title(title, fontsize=8)


def draw_angulation(a: Angulation, path, title: str | None = None) -> None:
    fig, ax = plt.subplots(figsize=(4, 3))
    _draw(ax, a, title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def draw_angulations(items, path, columns: int = 4) -> None:
    """``items`` is a sequence of ``(angulation, title)`` pairs."""
    items = list(items)
    rows = max(1, -(-len(items) // columns))
    fig, axes = plt.subplots(rows, columns, figsize=(3 * columns, 2.4 * rows), squeeze=False)
    for ax in axes.flat:
        ax.axis("off")
    for ax, (a, title) in zip(axes.flat, items):
        ax.axis("on")
        _draw(ax, a, title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)

