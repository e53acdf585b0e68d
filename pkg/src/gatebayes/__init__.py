"""Bayesian estimation of one-parameter qubit gates.

Measurement models for single-qubit and entangled two-qubit probes of a
z-axis rotation, exact and large-sample posteriors over the rotation angle,
information-based precision bounds, and reproducible simulated experiments.
"""

from .bayes import (
    DEFAULT_GRID_SIZE,
    NonNormalizablePosteriorError,
    OutcomeCounts,
    PosteriorGrid,
    Prior,
    UNIFORM_PRIOR,
    asymptotic_peak_check,
    asymptotic_posterior,
    posterior_from_counts,
    posterior_moments,
    total_variation_distance,
)
from .bounds import (
    BoundReport,
    bound_report,
    fisher_bell_analytic,
    fisher_expansion,
    fisher_numeric,
    fisher_single_analytic,
    generalized_fisher_asymptotic,
    stability_scan,
)
from .models import (
    AxisSpec,
    BellProbeModel,
    ConjugatedSettings,
    DomainError,
    OutcomeDistribution,
    SingleQubitModel,
    axis_conjugated_settings,
    axis_gate,
    bell_probe_probs,
    check_theta,
    conjugated_probs,
    optimal_single_qubit_model,
    rotation_from_z,
    single_qubit_probs,
)
from .montecarlo import (
    ExperimentResult,
    ExperimentSpec,
    ExperimentSummary,
    SweepRow,
    convergence_sweep,
    replicate_rng,
    run_experiment,
    sample_outcomes,
    summarize,
)
from .tolerances import TOL, Tolerances

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "BellProbeModel",
    "BoundReport",
    "ConjugatedSettings",
    "DEFAULT_GRID_SIZE",
    "DomainError",
    "ExperimentResult",
    "ExperimentSpec",
    "ExperimentSummary",
    "NonNormalizablePosteriorError",
    "OutcomeCounts",
    "OutcomeDistribution",
    "PosteriorGrid",
    "Prior",
    "SingleQubitModel",
    "SweepRow",
    "TOL",
    "Tolerances",
    "UNIFORM_PRIOR",
    "asymptotic_peak_check",
    "asymptotic_posterior",
    "axis_conjugated_settings",
    "axis_gate",
    "bell_probe_probs",
    "bound_report",
    "check_theta",
    "conjugated_probs",
    "convergence_sweep",
    "fisher_bell_analytic",
    "fisher_expansion",
    "fisher_numeric",
    "fisher_single_analytic",
    "generalized_fisher_asymptotic",
    "optimal_single_qubit_model",
    "posterior_from_counts",
    "posterior_moments",
    "replicate_rng",
    "rotation_from_z",
    "run_experiment",
    "sample_outcomes",
    "single_qubit_probs",
    "stability_scan",
    "summarize",
    "total_variation_distance",
]
