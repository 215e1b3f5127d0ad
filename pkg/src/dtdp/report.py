"""Figure rendering for verification sweeps (matplotlib, file output only)."""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .catalog import SweepReport

_PASS_COLOR = "#2d7f5e"
_FAIL_COLOR = "#b23a48"


def sweep_summary_figure(reports: Sequence[SweepReport]):
    """Two-panel summary: checked counts per tag and wall time per tag."""
    tags = [r.tag for r in reports]
    colors = [_PASS_COLOR if r.passed else _FAIL_COLOR for r in reports]
    fig, (ax_counts, ax_time) = plt.subplots(
        1, 2, figsize=(11, 0.45 * max(len(tags), 4) + 1.8), sharey=True
    )
    ypos = range(len(tags))
    ax_counts.barh(ypos, [r.checked for r in reports], color=colors)
    ax_counts.set_yticks(list(ypos), tags)
    ax_counts.invert_yaxis()
    ax_counts.set_xlabel("graphs checked")
    ax_counts.set_xscale("symlog")
    for i, r in enumerate(reports):
        if not r.passed:
            ax_counts.text(
                r.checked, i, f"  {len(r.discrepancies)} discrepancies", va="center"
            )
    ax_time.barh(ypos, [r.elapsed_ms / 1000.0 for r in reports], color=colors)
    ax_time.set_xlabel("wall time [s]")
    fig.suptitle("verification sweeps")
    fig.tight_layout()
    return fig


def save_sweep_figures(reports: Sequence[SweepReport], outdir: str) -> list[str]:
    """Render the sweep summary to PNG files alongside the JSONL output."""
    os.makedirs(outdir, exist_ok=True)
    fig = sweep_summary_figure(reports)
    target = os.path.join(outdir, "verify_summary.png")
    fig.savefig(target, dpi=150)
    plt.close(fig)
    return [target]
