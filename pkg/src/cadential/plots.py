"""Figures for analysis reports (key timeline and region occupancy)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .analyze import AnalysisReport, key_name  # noqa: E402

REGION_COLORS = {"A": "#c0504d", "B": "#4f81bd", "C": "#9bbb59"}


def plot_report(report: AnalysisReport, out_dir, stem: str) -> list[Path]:
    """Write ``<stem>_timeline.png`` and ``<stem>_regions.png``; return the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / f"{stem}_timeline.png", out / f"{stem}_regions.png"]

    fig, ax = plt.subplots(figsize=(8, 2.8))
    for seg in report.key_timeline:
        ax.barh(1, seg.last - seg.first + 1, left=seg.first - 0.5, color="#dddddd", edgecolor="k")
        ax.text((seg.first + seg.last) / 2, 1, key_name(seg.key), ha="center", va="center")
    for w in report.windows:
        for a in w.activations:
            y = 0.35 if a.region.value == "C" else 0 if a.region.value == "A" else -0.35
            ax.plot([w.first, w.last], [y, y], color=REGION_COLORS[a.region.value], alpha=0.35, lw=4)
    for f in report.modulations:
        ax.axvline(f.measure - 0.5, color="k", ls="--" if f.classification.quantized else ":", lw=1)
    for b in report.bridges:
        ax.plot(b.measure, 1.45, marker="v", color="k")
    ax.set_ylim(-0.7, 1.7)
    ax.set_yticks([-0.35, 0, 0.35, 1])
    ax.set_yticklabels(["B", "A", "C", "key"])
    ax.set_xlabel("measure")
    ax.set_title(report.title or "analysis")
    fig.tight_layout()
    fig.savefig(paths[0], dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(3.5, 2.8))
    labels = list(report.region_stats)
    ax.bar(labels, [report.region_stats[k] for k in labels],
           color=[REGION_COLORS[k] for k in labels])
    ax.set_ylim(0, 1)
    ax.set_ylabel("window share")
    ax.set_title("region occupancy")
    fig.tight_layout()
    fig.savefig(paths[1], dpi=120)
    plt.close(fig)
    return paths
