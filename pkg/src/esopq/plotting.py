"""Static figure rendering for harness reports.

Figures are written straight to image files next to the delimited
output; nothing interactive is opened.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def save_histogram_figure(rows, path, title: str | None = None) -> None:
    """Bar chart of (bitstring, count) rows, already sorted by count."""
    labels = [r[0] for r in rows]
    counts = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(max(6.0, 0.4 * len(rows)), 4.0))
    ax.bar(range(len(rows)), counts, color="#4878cf")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=90, fontsize=8, family="monospace")
    ax.set_xlabel("measured bitstring")
    ax.set_ylabel("counts")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_summary_figure(rows, path, title: str | None = None) -> None:
    """Mean approximation ratio vs n, one line pair per layer count."""
    layers = sorted({r.p for r in rows})
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    markers = {"standard": "o", "esop": "s"}
    for idx, p in enumerate(layers):
        sub = sorted((r for r in rows if r.p == p), key=lambda r: r.n)
        ns = [r.n for r in sub]
        for enc, attr in (("standard", "mean_standard"), ("esop", "mean_esop")):
            ys = [getattr(r, attr) for r in sub]
            pts = [(n, y) for n, y in zip(ns, ys) if y is not None]
            if not pts:
                continue
            ax.plot(
                [q[0] for q in pts],
                [q[1] for q in pts],
                marker=markers[enc],
                linestyle="-" if enc == "esop" else "--",
                color=f"C{idx}",
                label=f"{enc}, p={p}",
            )
    ax.set_xlabel("vertex count n")
    ax.set_ylabel("mean approximation ratio")
    ax.set_ylim(0.0, 1.0)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
