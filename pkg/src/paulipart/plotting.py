"""Figures for ratio reports, written straight to files (Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .stats import RatioReport  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "paulipart",
}


_FIXED_METADATA = {
    ".png": {"Software": None},
    ".pdf": {"CreationDate": None, "Producer": None},
    ".svg": {"Date": None},
}


def figure_size(scale: float = 1.0) -> tuple[float, float]:
    width = 6.5 * scale
    return width, width * 0.45


def plot_ratio_report(report: RatioReport, path: str | Path, title: str | None = None) -> Path:
    """Two panels: mean parts per gate set, and their ratio, against length."""
    path = Path(path)
    lengths = report.lengths()
    with plt.rc_context(STYLE):
        fig, (ax_parts, ax_ratio) = plt.subplots(1, 2, figsize=figure_size())
        ax_parts.plot(lengths, [r.mean_sqc for r in report.records], "o-", label="single-qudit Clifford")
        ax_parts.plot(lengths, [r.mean_c for r in report.records], "s-", label="Clifford")
        ax_parts.set_xlabel("operator length")
        ax_parts.set_ylabel("mean parts (greedy)")
        ax_parts.legend(frameon=False)

        ax_ratio.plot(lengths, report.ratios(), "o-", color="k")
        ax_ratio.axhline(1.0, color="0.7", lw=0.8, ls="--")
        ax_ratio.set_xlabel("operator length")
        ax_ratio.set_ylabel("parts ratio (single-qudit / Clifford)")
        fig.suptitle(title or f"q = {report.q}")
        fig.tight_layout()
        # fixed metadata keeps repeated runs byte-identical
        fig.savefig(path, dpi=150, metadata=_FIXED_METADATA.get(path.suffix.lower()))
        plt.close(fig)
    return path
