"""Report figures rendered next to the delimited output (Agg backend)."""

from __future__ import annotations

import math


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_psi_scatter(rows, path: str) -> None:
    """Scatter of the per-characteristic triangle counts: one dot per
    occurring (d, count) value."""
    plt = _pyplot()
    ds = [r[0] for r in rows]
    vals = [r[2] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.scatter(ds, vals, s=4, alpha=0.5, linewidths=0)
    ax.set_xlabel("diameter d")
    ax.set_ylabel("triangles per characteristic")
    ax.set_title("Occurring per-characteristic triangle counts")
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_line_configuration(record, path: str) -> None:
    """Diagram of a collinear configuration: base-line points plus apex."""
    plt = _pyplot()
    positions = record.positions
    apex = record.apex_distances
    # apex location from the leftmost point: distances r0 to position 0.
    span = positions[-1] - positions[0]
    r0 = apex[0]
    r_last = apex[-1]
    x_apex = (r0 * r0 - r_last * r_last + span * span) / (2 * span) if span else 0.0
    y_sq = r0 * r0 - x_apex * x_apex
    y_apex = math.sqrt(max(y_sq, 0.0))
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.axhline(0, color="0.8", lw=1, zorder=0)
    ax.plot(positions, [0] * len(positions), "o", color="C0", ms=5)
    ax.plot([x_apex], [y_apex], "^", color="C3", ms=8)
    for x, r in zip(positions, apex):
        ax.plot([x, x_apex], [0, y_apex], color="0.85", lw=0.8, zorder=0)
        ax.annotate(str(r), ((x + x_apex) / 2, y_apex / 2), fontsize=7, color="0.4")
    for x in positions:
        ax.annotate(str(x), (x, 0), textcoords="offset points", xytext=(0, -12), ha="center", fontsize=7)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(f"{len(positions)} collinear points + apex, diameter {record.diameter}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
