"""Figure rendering for the CLI report path.

Every CLI command that writes a table can also drop a PNG next to it; these
helpers do the plotting.  The Agg backend is forced so rendering works in
headless runs.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from qwpath.scaling import ScalingReport

__all__ = [
    "save_distribution_figure",
    "save_spectrum_figure",
    "save_trace_figure",
    "save_report_figure",
]


def save_distribution_figure(path, curves: Mapping[str, np.ndarray], title: str) -> str:
    """Overlay one or more vertex distributions; keys become legend labels."""
    fig, ax = plt.subplots(figsize=(7, 4))
    for label, probs in curves.items():
        ax.plot(np.arange(len(probs)), probs, marker=".", lw=1.0, label=label)
    ax.set_xlabel("vertex")
    ax.set_ylabel("probability")
    ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_spectrum_figure(path, eigenvalues: Sequence[float], title: str) -> str:
    """Eigenvalue ladder of the Jacobi matrix."""
    lam = np.asarray(eigenvalues, dtype=float)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(np.arange(lam.size), lam, marker="o", ms=3, lw=0.8)
    ax.axhline(0.0, color="0.7", lw=0.8)
    ax.set_xlabel("index")
    ax.set_ylabel("eigenvalue")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_trace_figure(path, trace: np.ndarray, title: str) -> str:
    """Heatmap of per-step position distributions (rows = time)."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    im = ax.imshow(trace, aspect="auto", origin="lower", interpolation="nearest", cmap="viridis")
    fig.colorbar(im, ax=ax, label="probability")
    ax.set_xlabel("vertex")
    ax.set_ylabel("step")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_report_figure(path, report: ScalingReport, title: Optional[str] = None) -> str:
    """Two panels over the size sweep: spectral gap, and CDF distances."""
    ok = [r for r in report.rows if r.ok]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    if ok:
        ns = [r.n for r in ok]
        ax1.plot(ns, [r.gap for r in ok], marker="o")
        ax2.semilogy(ns, [r.ks_cd for r in ok], marker="o", label="CTQW vs DTQW")
        if any(r.ks_ref is not None for r in ok):
            withref = [r for r in ok if r.ks_ref is not None]
            ax2.semilogy(
                [r.n for r in withref],
                [r.ks_ref for r in withref],
                marker="s",
                label="CTQW vs reference",
            )
        ax2.legend(frameon=False)
    ax1.set_xlabel("n")
    ax1.set_ylabel("spectral gap")
    ax2.set_xlabel("n")
    ax2.set_ylabel("sup CDF distance")
    fig.suptitle(title or (report.family or "size sweep"))
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)
