"""Constructors for the named Gaussian states and conditional mutual information.

All states are zero-mean.  Mode bookkeeping is positional with string labels;
partial traces and entropies are taken by label.
"""

from dataclasses import dataclass

import numpy as np

from .entropics import _as_params
from .errors import DomainError
from .symplectic import (
    apply_symplectic,
    embed_symplectic,
    gaussian_entropy,
    marginal,
    two_mode_squeezer_symplectic,
    validate_covariance,
)

_SIGMA_Z = np.diag([1.0, -1.0])


@dataclass(frozen=True)
class GaussianState:
    cov: np.ndarray
    labels: tuple
    mean: np.ndarray = None

    def __post_init__(self):
        validate_covariance(self.cov)
        n = self.cov.shape[0] // 2
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise DomainError(f"need {n} distinct mode labels, got {self.labels}")
        if self.mean is None:
            object.__setattr__(self, "mean", np.zeros(2 * n))
        elif len(self.mean) != 2 * n:
            raise DomainError("mean vector length must match the covariance")

    @property
    def n_modes(self):
        return len(self.labels)

    def mode_indices(self, labels):
        try:
            return [self.labels.index(l) for l in labels]
        except ValueError as exc:
            raise DomainError(f"unknown mode label in {labels}") from exc

    def marginal_cov(self, labels):
        return marginal(self.cov, self.mode_indices(labels))

    def entropy(self, labels=None):
        if labels is None:
            labels = self.labels
        return gaussian_entropy(self.marginal_cov(labels))


def thermal_state(E, label="A"):
    """One-mode thermal state with mean energy E: covariance (E + 1/2) I."""
    if E < 0.0:
        raise DomainError(f"mean energy must be >= 0, got {E}")
    return GaussianState(cov=(E + 0.5) * np.eye(2), labels=(label,))


def _two_mode_cov(diag_a, diag_b, off, off_matrix):
    return np.block(
        [[diag_a * np.eye(2), off * off_matrix], [off * off_matrix.T, diag_b * np.eye(2)]]
    )


def tms_thermal_state(kappa, E, labels=("A", "B")):
    """Two-mode squeezer applied to thermal(E) tensor vacuum; closed-form covariance."""
    _as_params(kappa, E)
    cov = _two_mode_cov(
        kappa * (E + 1.0) - 0.5,
        (kappa - 1.0) * (E + 1.0) + 0.5,
        (E + 1.0) * np.sqrt(kappa * (kappa - 1.0)),
        _SIGMA_Z,
    )
    return GaussianState(cov=cov, labels=tuple(labels))


def gamma_attenuated(eta, E, labels=("A", "B")):
    """Attenuator with transmissivity eta on half of a two-mode squeezed vacuum."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"transmissivity must be in [0, 1], got {eta}")
    if E < 0.0:
        raise DomainError(f"mean energy must be >= 0, got {E}")
    cov = _two_mode_cov(E + 0.5, eta * E + 0.5, np.sqrt(eta * E * (E + 1.0)), _SIGMA_Z)
    return GaussianState(cov=cov, labels=tuple(labels))


def gamma_amplified(kappa, E, labels=("A", "B")):
    """Amplifier with gain kappa on half of a two-mode squeezed vacuum."""
    _as_params(kappa, E)
    cov = _two_mode_cov(
        kappa * E + kappa - 0.5, E + 0.5, np.sqrt(kappa * E * (E + 1.0)), _SIGMA_Z
    )
    return GaussianState(cov=cov, labels=tuple(labels))


def attenuated_tmsv_cov(eta, E):
    """Closed-form covariance of the AR state: attenuator on half a TMSV of energy E."""
    return _two_mode_cov(E + 0.5, eta * E + 0.5, np.sqrt(eta * E * (E + 1.0)), _SIGMA_Z)


def extension_family(kappa, E, eta, labels=("A", "B", "R")):
    """Three-mode Gaussian extension of tms_thermal_state(kappa, E).

    Assembled from the closed-form AR covariance (attenuated two-mode squeezed
    vacuum), a vacuum mode B, and the AB two-mode squeezer.
    """
    _as_params(kappa, E, eta)
    ar = attenuated_tmsv_cov(eta, E)
    cov = 0.5 * np.eye(6)
    idx = np.array([0, 1, 4, 5])  # A and R quadratures in (A, B, R) ordering
    cov[np.ix_(idx, idx)] = ar
    S = embed_symplectic(two_mode_squeezer_symplectic(kappa), 3, (0, 1))
    return GaussianState(cov=apply_symplectic(S, cov), labels=tuple(labels))


def gaussian_cmi(state, part_a, part_b, part_r=()):
    """Conditional mutual information I(A;B|R) = S(AR) + S(BR) - S(R) - S(ABR) in nats."""
    part_a, part_b, part_r = tuple(part_a), tuple(part_b), tuple(part_r)
    parts = part_a + part_b + part_r
    if len(set(parts)) != len(parts):
        raise DomainError("parts A, B, R must be disjoint")
    state.mode_indices(parts)
    s_r = state.entropy(part_r) if part_r else 0.0
    return (
        state.entropy(part_a + part_r)
        + state.entropy(part_b + part_r)
        - s_r
        - state.entropy(parts)
    )
