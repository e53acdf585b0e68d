"""Simulated measurement runs and estimation diagnostics.

Each replicate draws ``n_measurements`` outcomes from the exact law at the
true angle, feeds the tallies to the posterior engine, and records the
posterior mean and variance together with convergence diagnostics.  Streams
are counter-based (Philox keyed by seed and replicate index), so replicates
are independent, reproducible, and order-insensitive.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bayes, bounds
from .models import DomainError, check_theta
from .tolerances import TOL


@dataclass(frozen=True)
class ExperimentSpec:
    """Reproducible description of a simulated estimation run."""

    model: object
    theta_star: float
    n_measurements: int
    replicates: int = 100
    seed: int = 0
    grid_size: int = bayes.DEFAULT_GRID_SIZE

    def __post_init__(self) -> None:
        check_theta(self.theta_star)
        if int(self.n_measurements) < 1:
            raise DomainError("n_measurements must be >= 1")
        if int(self.replicates) < 1:
            raise DomainError("replicates must be >= 1")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise DomainError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class ExperimentResult:
    """Diagnostics from one simulated replicate.

    ``rescaled_variance`` is the posterior variance multiplied by the
    information content of the matching large-sample posterior (which tends
    to F + n G for large n), so it approaches 1 from above as the run enters
    the asymptotic regime.  ``mean_ratio`` is the posterior mean over the
    true angle (NaN when the true angle is 0) and ``empirical_bias`` is the
    signed error of this replicate's posterior mean; averaging it over
    replicates estimates the estimator bias.
    """

    replicate: int
    counts: bayes.OutcomeCounts
    posterior_mean: float
    posterior_variance: float
    rescaled_variance: float
    mean_ratio: float
    empirical_bias: float
    boundary_degenerate: bool


@dataclass(frozen=True)
class ExperimentSummary:
    """Replicate averages of the convergence diagnostics."""

    replicates: int
    mean_ratio: float
    rescaled_variance: float
    empirical_bias: float


@dataclass(frozen=True)
class SweepRow:
    """One measurement budget in a convergence sweep."""

    n_measurements: int
    mean_ratio: float
    rescaled_variance: float


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """Counter-based random stream for one replicate, independent across indices."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence((int(seed), int(replicate)))))


def sample_outcomes(model, theta_star: float, n_measurements: int,
                    rng: np.random.Generator) -> bayes.OutcomeCounts:
    """Draw outcome tallies by inverse-CDF sampling of the exact law."""
    ts = check_theta(theta_star)
    n = int(n_measurements)
    if n < 1:
        raise DomainError("n_measurements must be >= 1")
    probs = np.asarray(model.prob_table(np.asarray(ts)), dtype=float)
    edges = np.cumsum(probs)
    edges[-1] = 1.0                       # guard the cumulative roundoff
    labels = np.searchsorted(edges, rng.random(n), side="right")
    tallies = np.bincount(labels, minlength=probs.size)
    return bayes.OutcomeCounts(tuple(int(v) for v in tallies))


def run_experiment(spec: ExperimentSpec) -> list[ExperimentResult]:
    """Run all replicates of a simulated experiment.

    Per replicate: sample counts at the true angle, build the exact posterior
    under the flat prior, and record its moments.  Results are bit-identical
    for identical specs.
    """
    info = bounds.generalized_fisher_asymptotic(
        spec.model, spec.theta_star, spec.n_measurements, spec.grid_size)
    star = np.asarray(spec.model.prob_table(np.asarray(spec.theta_star)), dtype=float)
    degenerate = bool(np.any(star >= 1.0 - TOL.prob_floor))
    results = []
    for r in range(spec.replicates):
        rng = replicate_rng(spec.seed, r)
        counts = sample_outcomes(spec.model, spec.theta_star, spec.n_measurements, rng)
        post = bayes.posterior_from_counts(spec.model, counts, grid_size=spec.grid_size)
        ratio = post.mean / spec.theta_star if spec.theta_star > 0.0 else math.nan
        results.append(ExperimentResult(
            replicate=r,
            counts=counts,
            posterior_mean=post.mean,
            posterior_variance=post.variance,
            rescaled_variance=post.variance * info,
            mean_ratio=ratio,
            empirical_bias=post.mean - spec.theta_star,
            boundary_degenerate=degenerate,
        ))
    return results


def summarize(results: Sequence[ExperimentResult]) -> ExperimentSummary:
    """Average the convergence diagnostics over replicates."""
    if not results:
        raise DomainError("cannot summarize an empty result list")
    return ExperimentSummary(
        replicates=len(results),
        mean_ratio=float(np.mean([r.mean_ratio for r in results])),
        rescaled_variance=float(np.mean([r.rescaled_variance for r in results])),
        empirical_bias=float(np.mean([r.empirical_bias for r in results])),
    )


def convergence_sweep(spec: ExperimentSpec,
                      n_list: Sequence[int]) -> list[SweepRow]:
    """Replicate-averaged diagnostics across increasing measurement budgets.

    Each budget reruns the full experiment with the same seed policy, so a
    single-entry list reproduces ``run_experiment`` aggregates exactly and a
    repeated call is deterministic.
    """
    budgets = [int(n) for n in n_list]
    if not budgets:
        raise DomainError("n_list must not be empty")
    if any(b <= a for a, b in zip(budgets, budgets[1:])):
        raise DomainError("n_list must be strictly increasing")
    rows = []
    for n in budgets:
        results = run_experiment(dataclasses.replace(spec, n_measurements=n))
        agg = summarize(results)
        rows.append(SweepRow(n_measurements=n,
                             mean_ratio=agg.mean_ratio,
                             rescaled_variance=agg.rescaled_variance))
    return rows
