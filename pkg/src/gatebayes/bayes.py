"""Posterior densities for the gate angle on a quadrature grid.

The posterior over theta in [0, pi] is discretized on a uniform grid with
composite-trapezoid weights.  All likelihood accumulation happens in log
space with a max-subtraction before exponentiating, so counts up to 10^6 and
beyond stay stable.  Grid endpoints where an outcome probability vanishes
carry a -inf log density and zero density, never a NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .models import DomainError, THETA_MAX, THETA_MIN, check_theta
from .tolerances import TOL

DEFAULT_GRID_SIZE = 4096
MIN_GRID_SIZE = 64


class NonNormalizablePosteriorError(ArithmeticError):
    """The likelihood vanishes identically on the grid, so no posterior exists."""


@dataclass(frozen=True)
class OutcomeCounts:
    """Tally of observed outcomes; the sufficient statistic for the posterior."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = []
        for c in self.counts:
            ic = int(c)
            if ic != c or ic < 0:
                raise DomainError(f"counts must be non-negative integers, got {c!r}")
            counts.append(ic)
        object.__setattr__(self, "counts", tuple(counts))

    @property
    def total(self) -> int:
        """Total number of measurements."""
        return sum(self.counts)

    @classmethod
    def from_sample(cls, outcomes: Iterable[int], n_outcomes: int) -> "OutcomeCounts":
        """Fold a raw outcome sequence into counts; the order is irrelevant."""
        counts = [0] * n_outcomes
        for x in outcomes:
            ix = int(x)
            if not 0 <= ix < n_outcomes:
                raise DomainError(f"outcome label {x!r} outside 0..{n_outcomes - 1}")
            counts[ix] += 1
        return cls(tuple(counts))


@dataclass(frozen=True)
class Prior:
    """Prior over the gate angle on [0, pi].

    Only the flat prior is implemented; the ``kind`` tag leaves room for
    informative priors.  ``fisher`` is the information the prior contributes
    to the van Trees bound, zero for the flat prior.
    """

    kind: str = "uniform"
    fisher: float = 0.0

    def __post_init__(self) -> None:
        if self.kind != "uniform":
            raise DomainError(f"unsupported prior kind {self.kind!r}")
        if not self.fisher >= 0.0:
            raise DomainError("prior fisher information must be >= 0")

    def log_density(self, theta: np.ndarray) -> np.ndarray:
        return np.full(np.shape(theta), -math.log(math.pi))


UNIFORM_PRIOR = Prior()


def make_grid(grid_size: int) -> tuple[np.ndarray, np.ndarray]:
    """Uniform grid over [0, pi] with composite-trapezoid quadrature weights."""
    if grid_size < MIN_GRID_SIZE:
        raise DomainError(f"grid_size must be >= {MIN_GRID_SIZE}, got {grid_size}")
    grid = np.linspace(THETA_MIN, THETA_MAX, int(grid_size))
    h = grid[1] - grid[0]
    weights = np.full(grid.shape, h)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    return grid, weights


def _moments(grid: np.ndarray, weights: np.ndarray,
             density: np.ndarray) -> tuple[float, float, float]:
    mean = float(np.sum(weights * grid * density))
    variance = float(np.sum(weights * (grid - mean) ** 2 * density))
    # np.argmax returns the first maximum, i.e. the smallest theta on ties
    argmax = float(grid[int(np.argmax(density))])
    return mean, variance, argmax


@dataclass(frozen=True, eq=False)
class PosteriorGrid:
    """Normalized density over the gate angle on a quadrature grid."""

    grid: np.ndarray
    weights: np.ndarray
    log_density: np.ndarray
    density: np.ndarray
    mean: float
    variance: float
    argmax: float

    @classmethod
    def from_log_density(cls, grid: np.ndarray, log_unnormalized: np.ndarray,
                         weights: np.ndarray | None = None) -> "PosteriorGrid":
        """Normalize an unnormalized log density over the grid.

        -inf entries mark zero density and are preserved; NaN entries are
        rejected.  Raises NonNormalizablePosteriorError when nothing on the
        grid carries probability mass.
        """
        grid = np.asarray(grid, dtype=float)
        lu = np.asarray(log_unnormalized, dtype=float)
        if grid.ndim != 1 or lu.shape != grid.shape:
            raise DomainError("grid and log density must be matching 1-d arrays")
        if np.isnan(lu).any():
            raise DomainError("log density contains NaN")
        if weights is None:
            h = np.diff(grid)
            weights = np.empty_like(grid)
            weights[0] = h[0] / 2.0
            weights[-1] = h[-1] / 2.0
            weights[1:-1] = (h[:-1] + h[1:]) / 2.0
        finite = np.isfinite(lu)
        if not finite.any():
            raise NonNormalizablePosteriorError("likelihood vanishes on the whole grid")
        peak = float(lu[finite].max())
        scaled = np.exp(lu - peak)        # exp(-inf) -> 0 exactly
        z = float(np.sum(weights * scaled))
        if not (z > 0.0 and math.isfinite(z)):
            raise NonNormalizablePosteriorError("posterior normalization vanished")
        density = scaled / z
        log_density = lu - (peak + math.log(z))
        mean, variance, argmax = _moments(grid, weights, density)
        return cls(grid=grid, weights=weights, log_density=log_density,
                   density=density, mean=mean, variance=variance, argmax=argmax)


def posterior_from_counts(model, counts: OutcomeCounts, prior: Prior | None = None,
                          grid_size: int = DEFAULT_GRID_SIZE) -> PosteriorGrid:
    """Exact posterior given outcome counts.

    The log density is sum_j m_j log P(j|theta) + log prior(theta), normalized
    over [0, pi] by trapezoid quadrature.  Outcomes with zero count contribute
    nothing, even where their probability vanishes.

    Args:
        model: SingleQubitModel or BellProbeModel (anything with
            ``prob_table`` and ``n_outcomes``).
        counts: observed tallies; length must match the model's outcome count.
        prior: defaults to the flat prior on [0, pi].
        grid_size: number of grid points, at least 64.

    Raises:
        NonNormalizablePosteriorError: if some observed outcome is impossible
            at every angle, so the likelihood vanishes identically.
    """
    prior = UNIFORM_PRIOR if prior is None else prior
    if len(counts.counts) != model.n_outcomes:
        raise DomainError(
            f"got {len(counts.counts)} counts for a model with {model.n_outcomes} outcomes")
    grid, weights = make_grid(grid_size)
    with np.errstate(divide="ignore"):
        log_table = np.log(model.prob_table(grid))
    log_unnorm = np.asarray(prior.log_density(grid), dtype=float).copy()
    for m, row in zip(counts.counts, log_table):
        if m:
            log_unnorm = log_unnorm + m * row
    return PosteriorGrid.from_log_density(grid, log_unnorm, weights)


def asymptotic_posterior(model, theta_star: float, n_measurements: int,
                         grid_size: int = DEFAULT_GRID_SIZE) -> PosteriorGrid:
    """Large-sample posterior conditioned on the true angle ``theta_star``.

    Each outcome s enters with the real-valued exponent P(s|theta_star) * n,
    the expected number of its occurrences, under a flat prior:

        P_n(theta | theta_star) ∝ prod_s P(s|theta) ** (P(s|theta_star) * n)

    Outcomes with zero weight are skipped, so boundary values of theta_star
    where some probability vanishes stay NaN-free.
    """
    ts = check_theta(theta_star)
    n = int(n_measurements)
    if n < 1:
        raise DomainError("n_measurements must be >= 1")
    grid, weights = make_grid(grid_size)
    star = np.asarray(model.prob_table(np.asarray(ts)), dtype=float)
    with np.errstate(divide="ignore"):
        log_table = np.log(model.prob_table(grid))
    log_unnorm = np.zeros_like(grid)
    for w, row in zip(star * n, log_table):
        if w > 0.0:
            log_unnorm = log_unnorm + w * row
    return PosteriorGrid.from_log_density(grid, log_unnorm, weights)


def posterior_moments(posterior: PosteriorGrid) -> tuple[float, float, float]:
    """Mean, variance, and argmax of a grid density via its quadrature rule.

    The argmax is the grid point of maximal density; ties resolve to the
    smallest angle.
    """
    return _moments(posterior.grid, posterior.weights, posterior.density)


def asymptotic_peak_check(model, theta_star: float, n_measurements: int,
                          step: float = TOL.peak_step) -> tuple[float, float]:
    """Central-difference derivatives of the asymptotic log density at theta_star.

    Returns (first, second) derivatives of log P_n(theta|theta_star) evaluated
    at theta = theta_star.  An interior maximum at the true angle shows up as
    a first derivative near zero and a strictly negative second derivative.

    Raises:
        DomainError: if theta_star leaves no room for the stencil.
    """
    ts = check_theta(theta_star)
    n = int(n_measurements)
    if n < 1:
        raise DomainError("n_measurements must be >= 1")
    if ts - step <= THETA_MIN or ts + step >= THETA_MAX:
        raise DomainError("theta_star too close to the boundary for the stencil")
    star = np.asarray(model.prob_table(np.asarray(ts)), dtype=float) * n
    points = np.array([ts - step, ts, ts + step])
    with np.errstate(divide="ignore"):
        log_table = np.log(model.prob_table(points))
    values = np.zeros(3)
    for w, row in zip(star, log_table):
        if w > 0.0:
            values = values + w * row
    fm, f0, fp = values
    first = (fp - fm) / (2.0 * step)
    second = (fp - 2.0 * f0 + fm) / step ** 2
    return float(first), float(second)


def total_variation_distance(p: PosteriorGrid, q: PosteriorGrid) -> float:
    """Total variation distance between two densities on the same grid."""
    if p.grid.shape != q.grid.shape or not np.allclose(p.grid, q.grid):
        raise DomainError("densities live on different grids")
    return 0.5 * float(np.sum(p.weights * np.abs(p.density - q.density)))
