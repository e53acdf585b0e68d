"""Information quantities and precision bounds for the estimation schemes.

The per-measurement information G(theta) = sum_s (dP(s|theta)/dtheta)^2 / P(s|theta)
is available in closed form for both probe schemes and by finite differences
for anything exposing ``prob_table``.  From G, the prior information F, and
the measurement budget n, the module assembles the standard lower bounds on
the estimator variance: 1/(n G) ignoring the prior and 1/(F + n G) with it.

Degenerate settings where a closed-form denominator vanishes with a nonzero
numerator are reported as NaN, a tagged "indeterminate" sentinel that scans
carry through and serializers spell out.  An infinitely informative limit is
reported as +inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bayes
from .models import (BellProbeModel, DomainError, SingleQubitModel, THETA_MAX,
                     THETA_MIN, check_theta, check_theta_grid)
from .tolerances import TOL


def _fisher_single(alpha, beta, delta, theta):
    """Vectorized single-qubit information; ``delta`` is phi - omega.

    Uses the cancellation-free form of the denominator,
        D = (sin a cos b - cos x cos a sin b)^2 + sin^2 x sin^2 b,
    algebraically equal to 1 - (cos a cos b + cos x sin a sin b)^2, so the
    result is exact near the optimum and never exceeds 1.
    """
    x = np.asarray(theta, dtype=float) + delta
    sx, cx = np.sin(x), np.cos(x)
    sa, ca = np.sin(alpha), np.cos(alpha)
    sb, cb = np.sin(beta), np.cos(beta)
    num = (sx * sa * sb) ** 2
    den = (sa * cb - cx * ca * sb) ** 2 + (sx * sb) ** 2
    degenerate = den <= TOL.denom_floor
    with np.errstate(divide="ignore", invalid="ignore"):
        g = np.where(degenerate, np.nan, num / np.where(degenerate, 1.0, den))
    return g


def fisher_single_analytic(model: SingleQubitModel, theta):
    """Closed-form information per measurement for the single-qubit scheme.

    G(theta) = sin^2(x) sin^2(alpha) sin^2(beta) / D, with x = theta + phi - omega
    and D = 1 - (cos(alpha)cos(beta) + cos(x)sin(alpha)sin(beta))^2.  The value
    lies in [0, 1], reaching 1 for alpha = beta = pi/2 at any phases.  Accepts
    a scalar or an array of angles; degenerate settings (D ~ 0, for example
    alpha = beta = 0) yield NaN.
    """
    th = check_theta_grid(theta) if np.ndim(theta) else check_theta(theta)
    g = _fisher_single(model.alpha, model.beta, model.phi - model.omega, th)
    return float(g) if np.ndim(theta) == 0 else g


def fisher_bell_analytic(model: BellProbeModel, theta):
    """Closed-form information per measurement for the entangled-probe scheme.

    G(theta) = c1^2 + c2^2
             + (c0^2 - c3^2)^2 (c0^2 + c3^2) sin^2(theta)
               / [ (c0^2 + c3^2)^2 - (c0^2 - c3^2)^2 cos^2(theta) ].

    The 0/0 limits are resolved by case analysis: the ratio equals c3^2 when
    c0 = 0, c0^2 when c3 = 0, and 0 when both vanish.  Hence G = 1 for every
    angle whenever c0 = 0 or c3 = 0.  Accepts a scalar or an array of angles.
    """
    th = check_theta_grid(theta) if np.ndim(theta) else check_theta(theta)
    th = np.asarray(th, dtype=float)
    c0, c1, c2, c3 = model.c
    a2, b2 = c0 * c0, c3 * c3
    base = c1 * c1 + c2 * c2
    if a2 <= TOL.denom_floor and b2 <= TOL.denom_floor:
        term = np.zeros_like(th)
    elif a2 <= TOL.denom_floor:
        term = np.full_like(th, b2)
    elif b2 <= TOL.denom_floor:
        term = np.full_like(th, a2)
    else:
        s2 = np.sin(th) ** 2
        # expanded denominator: all terms non-negative, positive when c0 c3 != 0
        den = (a2 * a2 + b2 * b2) * s2 + 2.0 * a2 * b2 * (2.0 - s2)
        term = (a2 - b2) ** 2 * (a2 + b2) * s2 / den
    g = base + term
    return float(g) if np.ndim(theta) == 0 else g


def fisher_numeric(model, theta: float, step: float = TOL.fd_step) -> float:
    """Finite-difference information per measurement.

    The outcome-probability derivatives use central differences with one
    Richardson refinement: d = (4 d_{h/2} - d_h) / 3 with h = ``step``.
    Outcomes with probability below the floor contribute zero when the
    derivative also vanishes (a removable limit) and +inf otherwise.

    Raises:
        DomainError: if theta leaves no room for the stencil.
    """
    th = check_theta(theta)
    if th - step < THETA_MIN or th + step > THETA_MAX:
        raise DomainError("theta too close to the boundary for the stencil")

    def central(h: float) -> np.ndarray:
        hi = model.prob_table(np.asarray(th + h))
        lo = model.prob_table(np.asarray(th - h))
        return (hi - lo) / (2.0 * h)

    dp = (4.0 * central(step / 2.0) - central(step)) / 3.0
    p = model.prob_table(np.asarray(th))
    total = 0.0
    for p_s, dp_s in zip(p, dp):
        if p_s < TOL.prob_floor:
            if abs(dp_s) < TOL.deriv_floor:
                continue                  # removable 0/0
            return math.inf
        total += float(dp_s) * float(dp_s) / float(p_s)
    return total


def fisher_expansion(alpha: float, beta: float, theta: float) -> float:
    """Second-order expansion of the single-qubit information near the optimum.

    G ~= 1 - [(alpha - pi/2)^2 + (beta - pi/2)^2] / sin^2(theta)
           + 2 cos(theta)/sin^2(theta) (alpha - pi/2)(beta - pi/2),

    which for small theta collapses to 1 - (alpha - beta)^2 / theta^2: a
    probe/measurement mismatch comparable to the angle itself wipes out the
    information.  The value is an expansion, not a bound, and may go negative
    far from the optimum.

    Raises:
        DomainError: if sin(theta) vanishes.
    """
    s2 = math.sin(theta) ** 2
    if s2 <= TOL.denom_floor:
        raise DomainError("expansion undefined where sin(theta) vanishes")
    da, db = alpha - math.pi / 2.0, beta - math.pi / 2.0
    return 1.0 - (da * da + db * db) / s2 + 2.0 * math.cos(theta) / s2 * da * db


def stability_scan(theta: float, alpha_grid, beta_grid,
                   phi: float = 0.0, omega: float = 0.0) -> np.ndarray:
    """Information landscape over probe and measurement polar angles.

    Returns the matrix G[i, j] = G(alpha_grid[i], beta_grid[j]) at the fixed
    gate angle, suitable for contour export.  Degenerate cells are NaN and
    simply excluded from any downstream extremum search.
    """
    th = check_theta(theta)
    alphas = np.asarray(alpha_grid, dtype=float)
    betas = np.asarray(beta_grid, dtype=float)
    for name, arr in (("alpha_grid", alphas), ("beta_grid", betas)):
        if arr.size and not np.all((arr >= 0.0) & (arr <= math.pi)):
            raise DomainError(f"{name} must lie within [0, pi]")
    return _fisher_single(alphas[:, None], betas[None, :], phi - omega, th)


def generalized_fisher_asymptotic(model, theta_star: float, n_measurements: int,
                                  grid_size: int = bayes.DEFAULT_GRID_SIZE) -> float:
    """Information carried by the large-sample posterior itself.

    Quadrature of integral P_n(theta|theta_star) [d/dtheta log P_n]^2 dtheta
    with the log-derivative taken by central differences on the grid.  For
    n >> 1 this approaches F + n G(theta_star).  Grid cells whose stencil
    touches a -inf log density (the boundary) are excluded; their integrand
    vanishes in the same limit.
    """
    post = bayes.asymptotic_posterior(model, theta_star, n_measurements, grid_size)
    ld = post.log_density
    h = float(post.grid[1] - post.grid[0])
    ok = np.isfinite(ld[2:]) & np.isfinite(ld[:-2])
    ld_safe = np.where(np.isfinite(ld), ld, 0.0)
    dlog = (ld_safe[2:] - ld_safe[:-2]) / (2.0 * h)
    integrand = np.zeros_like(ld)
    integrand[1:-1] = np.where(ok, post.density[1:-1] * dlog ** 2, 0.0)
    return float(np.sum(post.weights * integrand))


@dataclass(frozen=True)
class BoundReport:
    """Precision bounds at one gate angle and measurement budget.

    ``generalized_fisher`` is prior_fisher + n * fisher exactly;
    ``cr_bound`` = 1/(n * fisher) ignores the prior and ``van_trees_bound``
    = 1/generalized_fisher includes it, so the latter never exceeds the
    former for a non-negative prior information.  Uninformative settings
    produce +inf bounds.
    """

    theta: float
    fisher: float
    prior_fisher: float
    n_measurements: int
    generalized_fisher: float
    cr_bound: float
    van_trees_bound: float


def bound_report(model, theta: float, n_measurements: int,
                 prior: bayes.Prior | None = None) -> BoundReport:
    """Assemble the variance bounds at ``theta`` for ``n_measurements`` shots.

    Uses the closed-form information for the known model types and the
    finite-difference version otherwise.  A NaN information (degenerate
    settings) propagates to NaN bounds.
    """
    prior = bayes.UNIFORM_PRIOR if prior is None else prior
    th = check_theta(theta)
    n = int(n_measurements)
    if n < 1:
        raise DomainError("n_measurements must be >= 1")
    if isinstance(model, SingleQubitModel):
        g = fisher_single_analytic(model, th)
    elif isinstance(model, BellProbeModel):
        g = fisher_bell_analytic(model, th)
    else:
        g = fisher_numeric(model, th)
    if math.isnan(g):
        return BoundReport(th, g, prior.fisher, n, math.nan, math.nan, math.nan)
    ng = n * g
    h_m = prior.fisher + ng
    cr = 1.0 / ng if ng > 0.0 else math.inf
    vt = 1.0 / h_m if h_m > 0.0 else math.inf
    return BoundReport(theta=th, fisher=g, prior_fisher=prior.fisher,
                       n_measurements=n, generalized_fisher=h_m,
                       cr_bound=cr, van_trees_bound=vt)
