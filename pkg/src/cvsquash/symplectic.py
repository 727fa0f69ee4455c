"""Covariance-matrix formalism for multimode Gaussian states.

Quadrature ordering is (Q1, P1, Q2, P2, ...).  Covariance matrices are plain
real symmetric numpy arrays; the vacuum is (1/2) * identity.
"""

import numpy as np

from .entropics import g
from .errors import DomainError, InvalidStateError

_SIGMA_Z = np.diag([1.0, -1.0])

#: base tolerance on nu_min - 1/2 when validating covariance matrices; scaled
#: up with the matrix norm so roundoff from congruence chains at large energy
#: does not reject physical states
_NU_TOL = 1e-10


def symplectic_form(n_modes):
    """Block-diagonal [[0, 1], [-1, 0]] form on n modes."""
    if n_modes < 1:
        raise DomainError("need at least one mode")
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def n_modes_of(sigma):
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
        raise InvalidStateError(f"covariance matrix must be square 2n x 2n, got {sigma.shape}")
    return sigma.shape[0] // 2


def validate_covariance(sigma):
    """Check symmetry and the uncertainty relation; return the matrix unchanged."""
    sigma = np.asarray(sigma, dtype=float)
    n = n_modes_of(sigma)
    scale = max(1.0, float(np.abs(sigma).max()))
    if np.abs(sigma - sigma.T).max() > 1e-12 * scale:
        raise InvalidStateError("covariance matrix is not symmetric")
    nu = symplectic_eigenvalues(sigma, _validate=False)
    tol = max(_NU_TOL, 1e-13 * scale)
    if nu[-1] < 0.5 - tol:
        raise InvalidStateError(
            f"uncertainty relation violated: min symplectic eigenvalue {nu[-1]} < 1/2"
        )
    return sigma


def symplectic_eigenvalues(sigma, _validate=True):
    """Symplectic spectrum of a covariance matrix, descending.

    Computed from the Hermitian matrix i sqrt(sigma) Delta sqrt(sigma), whose
    spectrum is {+/- nu_k}; this keeps full symmetric-eigensolver accuracy,
    unlike the nonsymmetric eigenproblem for inv(Delta) sigma.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = n_modes_of(sigma)
    scale = max(1.0, float(np.abs(sigma).max()))
    if _validate and np.abs(sigma - sigma.T).max() > 1e-12 * scale:
        raise InvalidStateError("covariance matrix is not symmetric")
    w, V = np.linalg.eigh(0.5 * (sigma + sigma.T))
    if w[0] <= 0.0:
        raise InvalidStateError(f"covariance matrix is not positive definite: {w[0]}")
    root = (V * np.sqrt(w)) @ V.T
    delta = symplectic_form(n)
    A = root @ delta @ root
    nu = np.linalg.eigvalsh(1j * (0.5 * (A - A.T)))  # ascending, pairwise opposite
    paired = nu[:n - 1:-1]  # the positive half, descending
    if np.abs(paired + nu[:n]).max() > 1e-9 * max(1.0, paired[0]):
        raise InvalidStateError("symplectic spectrum does not pair up; matrix is not physical")
    if _validate:
        scale = max(1.0, float(np.abs(sigma).max()))
        tol = max(_NU_TOL, 1e-13 * scale)
        if paired[-1] < 0.5 - tol:
            raise InvalidStateError(
                f"uncertainty relation violated: min symplectic eigenvalue {paired[-1]} < 1/2"
            )
    return paired


def gaussian_entropy(sigma):
    """Von Neumann entropy sum_k g(nu_k - 1/2) of the Gaussian state with covariance sigma.

    Eigenvalues within 1e-13 * scale of 1/2 are treated as exactly pure: g has
    infinite slope at 0, so roundoff on pure modes would otherwise be amplified
    by a factor |ln eps| into every entropy difference.
    """
    nu = symplectic_eigenvalues(sigma)
    excess = np.maximum(nu - 0.5, 0.0)
    excess[excess < 1e-11 * max(1.0, nu[0])] = 0.0
    return float(np.sum(g(excess)))


def marginal(sigma, modes):
    """Principal submatrix of sigma on the given mode indices (order preserved)."""
    sigma = np.asarray(sigma, dtype=float)
    n = n_modes_of(sigma)
    modes = list(modes)
    if not modes or any(m < 0 or m >= n for m in modes):
        raise DomainError(f"mode subset {modes} out of range for {n} modes")
    if len(set(modes)) != len(modes):
        raise DomainError(f"mode subset {modes} has duplicates")
    idx = np.array([2 * m + q for m in modes for q in (0, 1)])
    return sigma[np.ix_(idx, idx)]


def beam_splitter_symplectic(eta):
    """4x4 quadrature action of the beam-splitter a -> sqrt(eta) a + sqrt(1-eta) b."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"transmissivity must be in [0, 1], got {eta}")
    c, s = np.sqrt(eta), np.sqrt(1.0 - eta)
    i2 = np.eye(2)
    return np.block([[c * i2, s * i2], [-s * i2, c * i2]])


def two_mode_squeezer_symplectic(kappa):
    """4x4 quadrature action of the two-mode squeezer a -> sqrt(k) a + sqrt(k-1) b^dag.

    The b^dag conjugation mixes Q with Q and P with -P of the partner mode.
    """
    if kappa < 1.0:
        raise DomainError(f"squeezing gain must be >= 1, got {kappa}")
    c, s = np.sqrt(kappa), np.sqrt(kappa - 1.0)
    return np.block([[c * np.eye(2), s * _SIGMA_Z], [s * _SIGMA_Z, c * np.eye(2)]])


def is_symplectic(S, tol=1e-10):
    S = np.asarray(S, dtype=float)
    n = n_modes_of(S)
    delta = symplectic_form(n)
    return np.abs(S @ delta @ S.T - delta).max() <= tol


def apply_symplectic(S, sigma):
    """Congruence action sigma -> S sigma S^T, symmetrized against roundoff."""
    S = np.asarray(S, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if S.shape != sigma.shape:
        raise DomainError(f"shape mismatch: S {S.shape} vs sigma {sigma.shape}")
    out = S @ sigma @ S.T
    return 0.5 * (out + out.T)


def embed_symplectic(S_pair, n_modes, modes):
    """Embed a 4x4 two-mode symplectic into 2n x 2n, acting on the given mode pair."""
    m0, m1 = modes
    out = np.eye(2 * n_modes)
    idx = np.array([2 * m0, 2 * m0 + 1, 2 * m1, 2 * m1 + 1])
    out[np.ix_(idx, idx)] = S_pair
    return out


def _one_mode(sigma):
    sigma = np.asarray(sigma, dtype=float)
    if n_modes_of(sigma) != 1:
        raise DomainError("channel actions are defined on one-mode covariances")
    return sigma


def attenuator_cov(sigma, eta):
    """Covariance action of the noiseless attenuator: eta sigma + (1-eta)/2 I."""
    sigma = _one_mode(sigma)
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"transmissivity must be in [0, 1], got {eta}")
    return eta * sigma + 0.5 * (1.0 - eta) * np.eye(2)


def amplifier_cov(sigma, kappa):
    """Covariance action of the noiseless amplifier: kappa sigma + (kappa-1)/2 I."""
    sigma = _one_mode(sigma)
    if kappa < 1.0:
        raise DomainError(f"amplifier gain must be >= 1, got {kappa}")
    return kappa * sigma + 0.5 * (kappa - 1.0) * np.eye(2)


def amplifier_complement_cov(sigma, kappa):
    """Covariance action of the amplifier's complementary channel.

    Fixed by the other marginal of the squeezer dilation with vacuum ancilla:
    (kappa - 1) Z sigma Z + kappa/2 I with Z = diag(1, -1).
    """
    sigma = _one_mode(sigma)
    if kappa < 1.0:
        raise DomainError(f"amplifier gain must be >= 1, got {kappa}")
    return (kappa - 1.0) * (_SIGMA_Z @ sigma @ _SIGMA_Z) + 0.5 * kappa * np.eye(2)
