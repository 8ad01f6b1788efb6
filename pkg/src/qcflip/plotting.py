"""Matplotlib rendering for sweep reports.

The CSV emitted by the sweep command is the primary artifact; this module
draws the companion figure written next to it.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .analytics import SweepResult


def render_sweep(result: SweepResult, path, title: str | None = None) -> None:
    """Draw one line per curve against the channel error rate and save to
    ``path`` (format inferred from the suffix)."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    markers = ("o", "s", "D", "^", "v", "P", "X")
    for index, (label, values) in enumerate(result.curves.items()):
        ax.plot(
            result.grid,
            values,
            label=label,
            marker=markers[index % len(markers)],
            markersize=3.5,
            markevery=max(1, len(result.grid) // 10),
            linewidth=1.4,
        )
    ax.set_xlabel("channel error rate $P_e$")
    ax.set_ylabel("cheating success probability")
    ax.set_ylim(0.0, 1.0)
    ax.grid(True, alpha=0.3)
    ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
