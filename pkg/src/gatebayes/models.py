"""Probe states, gates, and measurements for estimating a qubit rotation angle.

The gate is U(theta) = exp(-i/2 theta sigma_z) with theta in [0, pi].  Two
read-out schemes are modelled:

* a single-qubit probe cos(alpha/2)|0> + e^{i phi} sin(alpha/2)|1> measured
  against the projector onto cos(beta/2)|0> + e^{i omega} sin(beta/2)|1> and
  its complement (two outcomes);
* a two-qubit probe (1/sqrt2) sum_k c_k |sigma_k>>, with the gate acting on
  the first qubit, read out by the Bell projectors |sigma_k>><<sigma_k|/2
  (four outcomes).

Outcome probabilities are evaluated from closed forms, which are exact and
cheap.  A 2x2 matrix representation is kept only for conjugating the optimal
settings to an arbitrary rotation axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from .tolerances import TOL

THETA_MIN = 0.0
THETA_MAX = math.pi
TWO_PI = 2.0 * math.pi

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class DomainError(ValueError):
    """A parameter lies outside its admissible range."""


def _check_angle(value: float, name: str, low: float, high: float,
                 half_open: bool = False) -> float:
    v = float(value)
    inside = low <= v < high if half_open else low <= v <= high
    if math.isnan(v) or not inside:
        bracket = ")" if half_open else "]"
        raise DomainError(f"{name} must lie in [{low:g}, {high:g}{bracket}, got {value!r}")
    return v


def check_theta(theta: float) -> float:
    """Validate a single gate angle in [0, pi] and return it as a float."""
    if np.ndim(theta) != 0:
        raise DomainError("expected a scalar gate angle")
    return _check_angle(theta, "theta", THETA_MIN, THETA_MAX)


def check_theta_grid(theta: np.ndarray) -> np.ndarray:
    """Validate an array of gate angles in [0, pi]."""
    arr = np.asarray(theta, dtype=float)
    if arr.size and not np.all((arr >= THETA_MIN) & (arr <= THETA_MAX)):
        raise DomainError("all gate angles must lie in [0, pi]")
    return arr


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities of the measurement outcomes at one gate angle."""

    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        for p in probs:
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"outcome probability {p!r} outside [0, 1]")
        if abs(sum(probs) - 1.0) > TOL.norm_atol:
            raise DomainError(f"outcome probabilities sum to {sum(probs)!r}, not 1")

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, index: int) -> float:
        return self.probs[index]


@dataclass(frozen=True)
class SingleQubitModel:
    """Probe and measurement settings for the single-qubit scheme.

    Args:
        alpha: polar angle of the probe state, in [0, pi].
        phi: azimuthal phase of the probe state, in [0, 2*pi).
        beta: polar angle of the measured projector, in [0, pi].
        omega: azimuthal phase of the measured projector, in [0, 2*pi).

    Angle ranges are enforced here, at construction, so the evaluation
    methods can stay branch-free.
    """

    alpha: float
    phi: float
    beta: float
    omega: float

    n_outcomes: ClassVar[int] = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _check_angle(self.alpha, "alpha", 0.0, math.pi))
        object.__setattr__(self, "phi", _check_angle(self.phi, "phi", 0.0, TWO_PI, half_open=True))
        object.__setattr__(self, "beta", _check_angle(self.beta, "beta", 0.0, math.pi))
        object.__setattr__(self, "omega", _check_angle(self.omega, "omega", 0.0, TWO_PI, half_open=True))

    def prob_table(self, theta: np.ndarray) -> np.ndarray:
        """Outcome probabilities over an array of gate angles, shape (2, ...).

        P(0|theta) = (1 + cos(alpha)cos(beta)
                        + cos(phi - omega + theta) sin(alpha)sin(beta)) / 2
        and P(1|theta) = 1 - P(0|theta).
        """
        x = (self.phi - self.omega) + np.asarray(theta, dtype=float)
        p0 = 0.5 * (1.0
                    + math.cos(self.alpha) * math.cos(self.beta)
                    + np.cos(x) * math.sin(self.alpha) * math.sin(self.beta))
        p0 = np.clip(p0, 0.0, 1.0)   # roundoff can overshoot by ~1e-16
        return np.stack([p0, 1.0 - p0])


def optimal_single_qubit_model() -> SingleQubitModel:
    """Settings with maximal information at every angle: alpha = beta = pi/2,
    matched phases."""
    return SingleQubitModel(alpha=math.pi / 2, phi=0.0, beta=math.pi / 2, omega=0.0)


@dataclass(frozen=True)
class BellProbeModel:
    """Two-qubit entangled probe defined by four real coefficients c.

    The probe is (1/sqrt2) sum_k c_k |sigma_k>> on the Pauli basis, and the
    read-out projects onto the four maximally entangled states
    |sigma_k>>/sqrt2.  The coefficients must satisfy sum c_k^2 = 1, which
    makes the four outcome probabilities sum to one at every angle.
    """

    c: tuple[float, float, float, float]

    n_outcomes: ClassVar[int] = 4

    def __post_init__(self) -> None:
        c = tuple(float(x) for x in self.c)
        if len(c) != 4:
            raise DomainError(f"expected 4 coefficients, got {len(c)}")
        object.__setattr__(self, "c", c)
        norm2 = sum(x * x for x in c)
        if abs(norm2 - 1.0) > TOL.norm_atol:
            raise DomainError(f"coefficients have squared norm {norm2!r}, not 1")

    @classmethod
    def normalized(cls, c) -> "BellProbeModel":
        """Build a model from an arbitrary nonzero real 4-vector by rescaling."""
        arr = np.asarray(c, dtype=float)
        if arr.shape != (4,):
            raise DomainError("expected a real 4-vector")
        norm = float(np.linalg.norm(arr))
        if norm < TOL.norm_atol:
            raise DomainError("cannot normalize a (near-)zero coefficient vector")
        return cls(tuple(arr / norm))

    def prob_table(self, theta: np.ndarray) -> np.ndarray:
        """Outcome probabilities over an array of gate angles, shape (4, ...)."""
        th = np.asarray(theta, dtype=float)
        ch, sh = np.cos(th / 2.0), np.sin(th / 2.0)
        c0, c1, c2, c3 = self.c
        p0 = (c0 * ch) ** 2 + (c3 * sh) ** 2
        p1 = (c1 * ch - c2 * sh) ** 2
        p2 = (c1 * sh + c2 * ch) ** 2
        p3 = (c0 * sh) ** 2 + (c3 * ch) ** 2
        return np.clip(np.stack([p0, p1, p2, p3]), 0.0, 1.0)


def single_qubit_probs(model: SingleQubitModel, theta: float) -> OutcomeDistribution:
    """Exact two-outcome distribution of the single-qubit scheme at ``theta``."""
    th = check_theta(theta)
    p = model.prob_table(np.asarray(th))
    return OutcomeDistribution((float(p[0]), float(p[1])))


def bell_probe_probs(model: BellProbeModel, theta: float) -> OutcomeDistribution:
    """Exact four-outcome distribution of the entangled-probe scheme at ``theta``."""
    th = check_theta(theta)
    p = model.prob_table(np.asarray(th))
    return OutcomeDistribution(tuple(float(v) for v in p))


@dataclass(frozen=True)
class AxisSpec:
    """Unit rotation axis in R^3."""

    n: tuple[float, float, float]

    def __post_init__(self) -> None:
        n = tuple(float(x) for x in self.n)
        if len(n) != 3:
            raise DomainError("axis must be a real 3-vector")
        object.__setattr__(self, "n", n)
        norm = math.sqrt(sum(x * x for x in n))
        if abs(norm - 1.0) > TOL.norm_atol:
            raise DomainError(f"axis has norm {norm!r}, not 1")

    @classmethod
    def from_vector(cls, v) -> "AxisSpec":
        """Build an axis from an arbitrary vector by rescaling; rejects ~zero input."""
        arr = np.asarray(v, dtype=float)
        if arr.shape != (3,):
            raise DomainError("axis must be a real 3-vector")
        norm = float(np.linalg.norm(arr))
        if norm < TOL.norm_atol:
            raise DomainError("degenerate axis: norm is (near) zero")
        return cls(tuple(arr / norm))


def rotation_from_z(axis: AxisSpec) -> np.ndarray:
    """SU(2) rotation O satisfying O sigma_z O^dag = n . sigma."""
    nx, ny, nz = axis.n
    s = math.hypot(nx, ny)
    if s < TOL.norm_atol:
        if nz > 0.0:
            return np.eye(2, dtype=complex)
        # n = -z: rotate by pi about the x axis
        return np.array([[0.0, -1.0j], [-1.0j, 0.0]], dtype=complex)
    gamma = math.atan2(s, nz)          # angle from +z to n
    kx, ky = -ny / s, nx / s           # rotation axis z x n, normalized
    c, sn = math.cos(gamma / 2.0), math.sin(gamma / 2.0)
    return c * np.eye(2, dtype=complex) - 1.0j * sn * (kx * SIGMA_X + ky * SIGMA_Y)


def axis_gate(axis: AxisSpec, theta: float) -> np.ndarray:
    """exp(-i/2 theta n.sigma) as a 2x2 unitary."""
    nx, ny, nz = axis.n
    half = theta / 2.0
    ns = nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z
    return math.cos(half) * np.eye(2, dtype=complex) - 1.0j * math.sin(half) * ns


@dataclass(frozen=True, eq=False)
class ConjugatedSettings:
    """Optimal probe and projector for a rotation about an arbitrary axis.

    ``rotation`` is the SU(2) map O taking sigma_z to n.sigma; the probe and
    projector are the canonical optimal settings conjugated by O, so the
    outcome law of the axis-n gate with these settings coincides with the
    canonical z-axis law at every angle.
    """

    axis: AxisSpec
    rotation: np.ndarray
    probe: np.ndarray
    projector: np.ndarray


def axis_conjugated_settings(axis: AxisSpec) -> ConjugatedSettings:
    """Conjugate the optimal z-axis settings to the given rotation axis."""
    rot = rotation_from_z(axis)
    psi = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
    projector = np.outer(psi, psi.conj())
    return ConjugatedSettings(
        axis=axis,
        rotation=rot,
        probe=rot @ psi,
        projector=rot @ projector @ rot.conj().T,
    )


def conjugated_probs(settings: ConjugatedSettings, theta: float) -> OutcomeDistribution:
    """Two-outcome law of the axis-n gate under the conjugated settings."""
    th = check_theta(theta)
    gate = axis_gate(settings.axis, th)
    evolved = gate @ settings.probe
    p0 = float(np.real(evolved.conj() @ settings.projector @ evolved))
    p0 = min(max(p0, 0.0), 1.0)
    return OutcomeDistribution((p0, 1.0 - p0))
