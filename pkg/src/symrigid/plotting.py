"""Figure export for reports: expanded frameworks and gain graphs.

Only file output is supported; the Agg backend is selected before pyplot is
imported so this works headless.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .gaingraph import GainGraph  # noqa: E402


def _gain_label(g: GainGraph, gain) -> str:
    if g.exact:
        pt = gain.translation_point()
        tr = f"({pt[0]}, {pt[1]})" if pt is not None else "c"
        return f"({tr}, {gain.rot}/{g.rotation_order})"
    t = gain.trans
    return f"(({t.real:.3g}, {t.imag:.3g}), {gain.rot:.3g})"


def _circle_layout(n: int):
    if n == 1:
        return [(0.0, 0.0)]
    return [(math.cos(2 * math.pi * k / n + math.pi / 2), math.sin(2 * math.pi * k / n + math.pi / 2)) for k in range(n)]


def plot_gain_graph(g: GainGraph, path, witness=None, title: str | None = None) -> None:
    """Draw the quotient gain graph, highlighting the arcs of ``witness`` in red."""
    hot = set(witness or ())
    xy = _circle_layout(g.n)
    fig, ax = plt.subplots(figsize=(5, 5))
    pair_count: dict[tuple[int, int], int] = {}
    for i, arc in enumerate(g.arcs):
        colour = "tab:red" if i in hot else "0.25"
        u, v = arc.source, arc.target
        x0, y0 = xy[u]
        if arc.is_loop:
            k = pair_count.get((u, u), 0)
            pair_count[(u, u)] = k + 1
            r = 0.18 + 0.08 * k
            ang = math.atan2(y0, x0) if g.n > 1 else math.pi / 2
            cx, cy = x0 + r * math.cos(ang), y0 + r * math.sin(ang)
            ax.add_patch(plt.Circle((cx, cy), r, fill=False, color=colour, lw=1.5))
            ax.text(cx + r * math.cos(ang), cy + r * math.sin(ang), f"{i}: {_gain_label(g, arc.gain)}", fontsize=7, color=colour)
            continue
        key = (min(u, v), max(u, v))
        k = pair_count.get(key, 0)
        pair_count[key] = k + 1
        rad = 0.15 * (k - 0.5 * (k % 2)) * (1 if k % 2 else -1) if k else 0.0
        x1, y1 = xy[v]
        ax.add_patch(
            FancyArrowPatch((x0, y0), (x1, y1), connectionstyle=f"arc3,rad={rad}", arrowstyle="-|>",
                            mutation_scale=12, color=colour, lw=1.5, shrinkA=8, shrinkB=8)
        )
        mx, my = (x0 + x1) / 2 - rad * (y1 - y0), (y0 + y1) / 2 + rad * (x1 - x0)
        ax.text(mx, my, f"{i}: {_gain_label(g, arc.gain)}", fontsize=7, color=colour, ha="center")
    for v, (x, y) in enumerate(xy):
        ax.plot(x, y, "o", ms=10, color="tab:blue", zorder=3)
        ax.text(0.78 * x, 0.78 * y, g.names[v], ha="center", va="center", fontsize=9)
    ax.set_aspect("equal")
    ax.set_xlim(-1.8, 1.8)
    ax.set_ylim(-1.8, 1.8)
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, bbox_inches="tight", dpi=120)
    plt.close(fig)


def plot_framework(points, edges, path, labels=None, title: str | None = None) -> None:
    """Draw an expanded framework; vertices are coloured by orbit when labels are given."""
    fig, ax = plt.subplots(figsize=(5, 5))
    for a, b in edges:
        ax.plot([points[a][0], points[b][0]], [points[a][1], points[b][1]], "-", color="0.4", lw=1)
    colours = plt.get_cmap("tab10")
    for k, (x, y) in enumerate(points):
        c = colours(labels[k][1] % 10) if labels is not None else "tab:blue"
        ax.plot(x, y, "o", ms=5, color=c, zorder=3)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, bbox_inches="tight", dpi=120)
    plt.close(fig)
