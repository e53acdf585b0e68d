"""Shared numeric tolerances and step sizes.

Every magic constant used for validation, degeneracy detection, or finite
differencing lives in this one record so library code and tests agree on a
single source of truth.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    norm_atol: float = 1e-12          # probability vectors and state coefficients sum to 1
    conjugation_atol: float = 1e-10   # rotated-axis law vs the canonical z-axis law
    quadrature_atol: float = 1e-10    # posterior density integrates to 1 on its grid
    prob_floor: float = 1e-14         # below this an outcome counts as impossible
    deriv_floor: float = 1e-9         # |dP/dtheta| below this is a vanishing derivative
    denom_floor: float = 1e-14        # closed-form denominators below this are degenerate
    fd_step: float = 1e-5             # central-difference step for information estimates
    peak_step: float = 1e-4           # central-difference step for log-density peak checks


TOL = Tolerances()
