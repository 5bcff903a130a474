"""Figure rendering for the CLI report path.

Each function turns one result type into a PNG next to the delimited
output. The agg backend is forced so rendering works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .scenarios import SWEEP_PAIRS, CkwScanPoint, GhzReport, SweepResult

__all__ = [
    "render_sweep_figure",
    "render_ghz_figure",
    "render_ckw_figure",
]

_GHZ_CURVES = (
    ("curve_a", "C(3,5)"),
    ("curve_b", "C(4,5)"),
    ("curve_c", "C(1,2) after first"),
    ("curve_d", "C(2,3) after second"),
    ("curve_e", "C(2,5) after second"),
)


def render_sweep_figure(result: SweepResult, path: str) -> None:
    """One heatmap panel per output pair over the (alpha, c0) plane."""
    fig, axes = plt.subplots(2, 3, figsize=(12.0, 7.0), sharex=True, sharey=True)
    image = None
    for ax, pair in zip(axes.flat, SWEEP_PAIRS):
        surface = result.concurrence_surfaces[pair]
        image = ax.imshow(
            surface,
            origin="lower",
            extent=(0.0, 1.0, 0.0, 1.0),
            vmin=0.0,
            vmax=1.0,
            aspect="auto",
        )
        ax.set_title(f"C({pair[0]},{pair[1]})")
    for ax in axes[-1]:
        ax.set_xlabel(r"$C_0$")
    for row in axes:
        row[0].set_ylabel(r"$\alpha$")
    fig.suptitle(f"pairwise concurrence, {result.family.value} input")
    fig.colorbar(image, ax=axes.ravel().tolist(), shrink=0.85, label="concurrence")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_ghz_figure(reports: list[GhzReport], path: str) -> None:
    """Concurrence curves of the GHZ pipeline against alpha."""
    alphas = np.array([report.alpha for report in reports])
    marker = "o" if len(reports) == 1 else None
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for field, label in _GHZ_CURVES:
        values = [getattr(report, field) for report in reports]
        ax.plot(alphas, values, marker=marker, label=label)
    ax.set_xlabel(r"$\alpha$")
    ax.set_ylabel("concurrence")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(-0.02, 1.02)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_ckw_figure(points: list[CkwScanPoint], path: str) -> None:
    """Monogamy residual per qubit, one panel per measurement stage."""
    alphas = np.array([point.alpha for point in points])
    n_qubits = len(points[0].after_first) if points else 0
    marker = "o" if len(points) == 1 else None
    fig, axes = plt.subplots(1, 2, figsize=(11.0, 4.5), sharey=True)
    for ax, stage, title in (
        (axes[0], "after_first", "after first measurement"),
        (axes[1], "after_second", "after second measurement"),
    ):
        for q in range(1, n_qubits + 1):
            values = [getattr(point, stage)[q - 1].saturation for point in points]
            ax.plot(alphas, values, marker=marker, label=f"qubit {q}")
        ax.set_xlabel(r"$\alpha$")
        ax.set_title(title)
        ax.grid(True, alpha=0.3)
    axes[0].set_ylabel(r"$s = \tau - \sum C^2$")
    axes[1].legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
