"""Optional figure rendering for command-line reports.

Two drawings are produced on request: the per-step growth of an
expansion, and the template precedence graph with negative edges dashed.
Rendering is file-only; no interactive backend is required.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle

from .engine import ExpansionReport
from .stratification import NEGATIVE, PrecedenceGraph


def render_growth_chart(report: ExpansionReport, path: str) -> None:
    """Cumulative axiom count after each expansion step."""
    total_added = sum(len(step) for step in report.added_axioms)
    base = len(report.result) - total_added
    counts = [base]
    for step in report.added_axioms:
        counts.append(counts[-1] + len(step))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.step(range(len(counts)), counts, where="post", marker="o")
    ax.set_xlabel("expansion step")
    ax.set_ylabel("axioms")
    ax.set_title(f"fixpoint after {report.steps} step(s), "
                 f"{total_added} axiom(s) added")
    ax.set_xticks(range(len(counts)))
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_precedence_graph(graph: PrecedenceGraph, path: str,
                            levels: dict | None = None) -> None:
    """Circular layout; activation and body edges share a style, negative
    edges are dashed red.  Node labels show the stratum when known."""
    keys = sorted(graph.nodes)
    n = max(len(keys), 1)
    pos = {}
    for i, key in enumerate(keys):
        angle = 2 * math.pi * i / n
        pos[key] = (math.cos(angle), math.sin(angle))
    fig, ax = plt.subplots(figsize=(7, 7))
    for edge in graph.edges:
        color = "firebrick" if edge.polarity == NEGATIVE else "black"
        style = "--" if edge.polarity == NEGATIVE else "-"
        x1, y1 = pos[edge.src]
        x2, y2 = pos[edge.dst]
        if edge.src == edge.dst:
            loop = Circle((x1 * 1.18, y1 * 1.18), 0.09, fill=False,
                          edgecolor=color, linestyle=style, linewidth=1.2)
            ax.add_patch(loop)
            continue
        ax.annotate("", xy=(x2, y2), xytext=(x1, y1),
                    arrowprops=dict(arrowstyle="-|>", color=color,
                                    linestyle=style, linewidth=1.2,
                                    shrinkA=16, shrinkB=16,
                                    connectionstyle="arc3,rad=0.12"))
    for key in keys:
        x, y = pos[key]
        label = graph.display(key)
        if levels is not None and key in levels:
            label = f"{label}\nstratum {levels[key]}"
        ax.plot([x], [y], "o", markersize=10, color="steelblue")
        ax.annotate(label, (x, y), textcoords="offset points", xytext=(0, 14),
                    ha="center", fontsize=8)
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.6, 1.6)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
