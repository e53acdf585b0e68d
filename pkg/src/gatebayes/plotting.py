"""Figure rendering for the command-line reports.

Every function draws one figure from already-computed table data and writes
it straight to a file (Agg backend, no display).
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bayes import PosteriorGrid
from .montecarlo import ExperimentResult, SweepRow


def save_probability_curves(thetas: np.ndarray, table: np.ndarray,
                            path: str) -> None:
    """Outcome probabilities versus the gate angle."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for j, row in enumerate(table):
        ax.plot(thetas, row, label=f"P({j})")
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel("outcome probability")
    ax.set_xlim(thetas[0], thetas[-1])
    ax.set_ylim(-0.02, 1.02)
    ax.legend(frameon=False)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def save_fisher_curve(thetas: np.ndarray, values: np.ndarray, path: str) -> None:
    """Per-measurement information versus the gate angle."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(thetas, values, color="C0")
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$G(\theta)$")
    ax.set_xlim(thetas[0], thetas[-1])
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def save_scan_panels(theta_stars: Sequence[float], alphas: np.ndarray,
                     betas: np.ndarray, matrices: Sequence[np.ndarray],
                     path: str) -> None:
    """Contour panels of the information landscape, one per gate angle."""
    n = len(theta_stars)
    fig, axes = plt.subplots(1, n, figsize=(4.2 * n, 4), squeeze=False)
    for ax, ts, mat in zip(axes[0], theta_stars, matrices):
        # rows index alpha, columns beta: transpose so alpha runs along x
        cs = ax.contourf(alphas, betas, mat.T, levels=21, cmap="Greys")
        ax.set_title(rf"$\theta = {ts:g}$")
        ax.set_xlabel(r"$\alpha$")
        ax.set_ylabel(r"$\beta$")
        fig.colorbar(cs, ax=ax, shrink=0.9)
    fig.tight_layout()
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def save_posterior_curve(post: PosteriorGrid, path: str) -> None:
    """Posterior density with its mean and mode marked."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(post.grid, post.density, color="C0")
    ax.axvline(post.mean, color="C1", ls="--", lw=1, label="mean")
    ax.axvline(post.argmax, color="C2", ls=":", lw=1, label="mode")
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel("posterior density")
    ax.set_xlim(post.grid[0], post.grid[-1])
    ax.legend(frameon=False)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def save_replicate_diagnostics(results: Sequence[ExperimentResult],
                               theta_star: float, path: str) -> None:
    """Per-replicate posterior means and rescaled variances."""
    idx = [r.replicate for r in results]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(idx, [r.posterior_mean for r in results], "s", ms=3, color="gray")
    ax1.axhline(theta_star, color="k", lw=1)
    ax1.set_xlabel("replicate")
    ax1.set_ylabel("posterior mean")
    ax2.plot(idx, [r.rescaled_variance for r in results], "s", ms=3, color="gray")
    ax2.axhline(1.0, color="k", lw=1)
    ax2.set_xlabel("replicate")
    ax2.set_ylabel("rescaled variance")
    fig.tight_layout()
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def save_sweep_curves(rows: Sequence[SweepRow], path: str) -> None:
    """Convergence of the mean ratio and rescaled variance with the budget."""
    ns = [row.n_measurements for row in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(ns, [row.mean_ratio for row in rows], "o-", color="C0")
    ax1.axhline(1.0, color="k", lw=1)
    ax1.set_xscale("log")
    ax1.set_xlabel("measurements")
    ax1.set_ylabel("mean / true angle")
    ax2.plot(ns, [row.rescaled_variance for row in rows], "s-", color="C0")
    ax2.axhline(1.0, color="k", lw=1)
    ax2.set_xscale("log")
    ax2.set_xlabel("measurements")
    ax2.set_ylabel("rescaled variance")
    fig.tight_layout()
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
