"""Truncated Fock-space oracle: dense states, unitaries and channels.

This is the independent verification route for the covariance-matrix
formalism.  States are dense density matrices on a cutoff Fock space with a
recorded geometric tail bound.  The beam-splitter and two-mode squeezer
conserve the photon-number sum and difference respectively, so their
truncated generators are block tridiagonal; all unitaries are assembled
exactly from per-block matrix exponentials.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .errors import CutoffError, DomainError, InvalidStateError, QuadratureError

#: geometric tail mass a computation is sized for
TAIL_TARGET = 1e-10

#: refuse when the actual tail at the requested cutoff exceeds this multiple
#: of the target (the selection rule is marginal by design at round cutoffs)
_TAIL_SLACK = 10.0

#: eigenvalues below this are dropped when computing spectral entropies
_EIG_FLOOR = 1e-14


@dataclass(frozen=True)
class TruncatedState:
    """Dense density matrix on a cutoff Fock space, with truncation metadata."""

    matrix: np.ndarray
    cutoff: int
    modes: int
    tail_bound: float

    def __post_init__(self):
        dim = self.cutoff**self.modes
        if self.matrix.shape != (dim, dim):
            raise InvalidStateError(
                f"matrix shape {self.matrix.shape} does not match cutoff {self.cutoff}"
                f" on {self.modes} modes"
            )
        if np.abs(self.matrix - self.matrix.conj().T).max() > 1e-12:
            raise InvalidStateError("density matrix is not Hermitian")
        tr = float(np.real(np.trace(self.matrix)))
        if not (1.0 - self.tail_bound - 1e-10 <= tr <= 1.0 + 1e-10):
            raise InvalidStateError(f"trace {tr} outside [1 - tail_bound, 1]")

    @property
    def trace(self):
        return float(np.real(np.trace(self.matrix)))

    def mean_photon_number(self, mode=0):
        n = np.arange(self.cutoff, dtype=float)
        p = self.photon_probabilities(mode)
        return float(p @ n)

    def photon_probabilities(self, mode=0):
        dims = (self.cutoff,) * self.modes
        diag = np.real(np.diagonal(self.matrix)).reshape(dims)
        axes = tuple(i for i in range(self.modes) if i != mode)
        return diag.sum(axis=axes) if axes else diag


def ladder(N):
    """Lowering operator: sqrt(n) on the superdiagonal."""
    if N < 2:
        raise DomainError("cutoff must be at least 2")
    return np.diag(np.sqrt(np.arange(1.0, N)), 1)


def number_operator(N):
    if N < 2:
        raise DomainError("cutoff must be at least 2")
    return np.diag(np.arange(N, dtype=float))


def geometric_tail(E, N):
    """Probability mass of a thermal state with mean energy E above cutoff N."""
    if E <= 0.0:
        return 0.0
    return (E / (E + 1.0)) ** N


def required_cutoff(E_max, tail=TAIL_TARGET):
    """Smallest cutoff whose geometric tail at energy E_max is below the target."""
    if E_max <= 0.0:
        return 2
    return max(2, math.ceil(math.log(tail) / math.log(E_max / (E_max + 1.0))))


def check_cutoff(N, E_max, tail=TAIL_TARGET):
    """Refuse (with a required-N hint) cutoffs whose tail is far above the target."""
    if geometric_tail(E_max, N) > _TAIL_SLACK * tail:
        hint = required_cutoff(E_max, tail)
        raise CutoffError(
            f"cutoff {N} is inadequate for per-mode energy {E_max:.4g};"
            f" the selection rule asks for N >= {hint}",
            required=hint,
        )


def thermal_fock(E, N):
    """Diagonal geometric thermal state, left sub-normalized by its tail."""
    if E < 0.0:
        raise DomainError(f"mean energy must be >= 0, got {E}")
    if N < 2:
        raise DomainError("cutoff must be at least 2")
    if E == 0.0:
        p = np.zeros(N)
        p[0] = 1.0
    else:
        p = (E / (E + 1.0)) ** np.arange(N) / (E + 1.0)
    return TruncatedState(np.diag(p), cutoff=N, modes=1, tail_bound=geometric_tail(E, N))


def vacuum_fock(N):
    return thermal_fock(0.0, N)


def tmsv_vector(E, N):
    """Schmidt vector of the two-mode squeezed vacuum with mean energy E per mode,
    as the diagonal (N, N) amplitude array."""
    if E < 0.0:
        raise DomainError(f"mean energy must be >= 0, got {E}")
    c = np.zeros(N)
    if E == 0.0:
        c[0] = 1.0
    else:
        c = np.sqrt((E / (E + 1.0)) ** np.arange(N) / (E + 1.0))
    return np.diag(c)


@lru_cache(maxsize=None)
def _squeezer_blocks(kappa, N):
    """Per-block orthogonal matrices of U_kappa; block d holds n_a - n_b = d >= 0."""
    r = math.acosh(math.sqrt(kappa))
    blocks = []
    for d in range(N):
        size = N - d
        j = np.arange(1.0, size)
        c = r * np.sqrt((d + j) * j)
        G = np.diag(c, -1) - np.diag(c, 1)
        blocks.append(expm(G) if size > 1 else np.eye(1))
    return blocks


@lru_cache(maxsize=None)
def _bs_blocks(eta, N):
    """Per-block orthogonal matrices of U_eta; block s holds n_a + n_b = s.

    Basis index within a block is j = n_b, restricted to the retained levels.
    """
    theta = math.acos(min(1.0, math.sqrt(eta)))
    blocks = []
    for s in range(2 * N - 1):
        j = np.arange(max(0, s - N + 1), min(s, N - 1) + 1, dtype=float)
        size = len(j)
        c = theta * np.sqrt((s - j[1:] + 1.0) * j[1:])
        G = np.diag(c, 1) - np.diag(c, -1)
        blocks.append(expm(G) if size > 1 else np.eye(1))
    return blocks


def squeezer_unitary(kappa, N, max_input_energy=None):
    """Dense two-mode squeezing unitary on the cutoff space, exactly orthogonal."""
    if kappa < 1.0:
        raise DomainError(f"squeezing gain must be >= 1, got {kappa}")
    if N < 2:
        raise DomainError("cutoff must be at least 2")
    if max_input_energy is not None:
        check_cutoff(N, kappa * (max_input_energy + 1.0) - 1.0)
    blocks = _squeezer_blocks(float(kappa), N)
    U = np.zeros((N * N, N * N))
    for d in range(N):
        j = np.arange(N - d)
        for flat in ((d + j) * N + j, j * N + (d + j)) if d else ((j * (N + 1)),):
            U[np.ix_(flat, flat)] = blocks[d]
    return U


def beam_splitter_unitary(eta, N):
    """Dense beam-splitter unitary on the cutoff space, exactly orthogonal."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"transmissivity must be in [0, 1], got {eta}")
    if N < 2:
        raise DomainError("cutoff must be at least 2")
    blocks = _bs_blocks(float(eta), N)
    U = np.zeros((N * N, N * N))
    for s in range(2 * N - 1):
        j = np.arange(max(0, s - N + 1), min(s, N - 1) + 1)
        flat = (s - j) * N + j
        U[np.ix_(flat, flat)] = blocks[s]
    return U


def displacement_unitary(r, N):
    """Displacement operator exp(r a^dag - conj(r) a) on the cutoff space."""
    a = ladder(N)
    return expm(r * a.T.conj() - np.conj(r) * a)


def partial_trace(state, keep):
    """Reduced state on the modes in ``keep`` (order preserved)."""
    keep = list(keep)
    if not keep or any(m < 0 or m >= state.modes for m in keep):
        raise DomainError(f"keep set {keep} out of range for {state.modes} modes")
    N, m = state.cutoff, state.modes
    dims = (N,) * (2 * m)
    rho = state.matrix.reshape(dims)
    drop = [i for i in range(m) if i not in keep]
    for i in sorted(drop, reverse=True):
        rho = np.trace(rho, axis1=i, axis2=i + rho.ndim // 2)
    # reorder retained modes to the requested order
    order = sorted(range(len(keep)), key=lambda i: keep[i])
    perm = [order.index(i) for i in range(len(keep))]
    k = len(keep)
    rho = rho.transpose(tuple(perm) + tuple(k + p for p in perm))
    dim = N**k
    return TruncatedState(
        rho.reshape(dim, dim), cutoff=N, modes=k, tail_bound=state.tail_bound
    )


def entropy_of_spectrum(eigs):
    lam = np.clip(np.real(np.asarray(eigs)), 0.0, None)
    lam = lam[lam > _EIG_FLOOR]
    return float(-np.sum(lam * np.log(lam)))


def spectral_entropy(state):
    """Von Neumann entropy -sum lambda ln lambda of a truncated state."""
    matrix = state.matrix if isinstance(state, TruncatedState) else np.asarray(state)
    return entropy_of_spectrum(np.linalg.eigvalsh(matrix))


def _propagate_vacuum_ancilla(v, blocks, kind):
    """Send the vector v (mode A) tensored with a vacuum ancilla through a
    blocked two-mode unitary; returns the joint (N, N) wavefunction (A, ancilla)."""
    N = len(v)
    psi = np.zeros((N, N), dtype=v.dtype)
    for n in range(N):
        if v[n] == 0.0:
            continue
        col = blocks[n][:, 0]
        j = np.arange(len(col))
        if kind == "squeezer":
            psi[n + j, j] = v[n] * col
        else:  # beam splitter: block total s = n, j = ancilla occupation
            psi[n - j, j] = v[n] * col
    return psi


def _channel_energies(E_in, channel, complement):
    if channel.kind == "attenuator":
        return max(E_in, 1.0e-12)
    kappa = channel.value
    grown = kappa * (E_in + 1.0) - 1.0
    return max(E_in, grown if not complement else max(grown, (kappa - 1.0) * (E_in + 1.0)))


def apply_channel_fock(state, channel, complement=False, enforce_cutoff=True):
    """Stinespring action of the attenuator/amplifier on a one-mode state.

    The input is mixed with a vacuum ancilla through the blocked two-mode
    unitary; ``complement=True`` keeps the ancilla instead of the output.
    ``enforce_cutoff=False`` skips the thermal-tail refusal; appropriate for
    states with bounded support, where the mean-energy heuristic is far too
    pessimistic.
    """
    if state.modes != 1:
        raise DomainError("channel actions are defined on one-mode states")
    if complement and channel.kind != "amplifier":
        raise DomainError("only the amplifier complement is supported")
    N = state.cutoff
    if enforce_cutoff:
        E_in = state.mean_photon_number()
        check_cutoff(N, _channel_energies(E_in, channel, complement))
    if channel.kind == "attenuator":
        blocks, kind = _bs_blocks(float(channel.value), N), "beam-splitter"
    else:
        blocks, kind = _squeezer_blocks(float(channel.value), N), "squeezer"
    w, V = np.linalg.eigh(state.matrix)
    out = np.zeros((N, N), dtype=complex)
    for p, vec in zip(w, V.T):
        if p < 1e-15:
            continue
        psi = _propagate_vacuum_ancilla(vec, blocks, kind)
        if complement:
            out += p * (psi.T @ psi.conj())
        else:
            out += p * (psi @ psi.conj().T)
    out = 0.5 * (out + out.conj().T)
    tail = max(state.tail_bound, 1.0 - float(np.real(np.trace(out))))
    return TruncatedState(out, cutoff=N, modes=1, tail_bound=max(tail, 0.0))


def _gram_entropy(mat):
    """Entropy of M M^dag for a rectangular wavefunction unfolding M."""
    gram = mat @ mat.conj().T
    return entropy_of_spectrum(np.linalg.eigvalsh(gram))


def oracle_cmi(kappa, E, eta, N, enforce_cutoff=True):
    """Conditional mutual information I(A;B|R) of the Gaussian extension family,
    computed entirely in Fock space.

    The three-mode state is handled through its exact four-mode purification
    (the attenuator environment C), so only the pure-state vector and two-mode
    reduced matrices are ever materialized.
    """
    if kappa < 1.0 or E < 0.0 or not 0.0 <= eta <= 1.0:
        raise DomainError(f"parameters out of range: {kappa}, {E}, {eta}")
    e_max = max(kappa * (E + 1.0) - min(eta, 1.0 - eta) * E - 1.0, E)
    if enforce_cutoff:
        check_cutoff(N, e_max)

    psi_ar = tmsv_vector(E, N)  # (A, R)
    # attenuator environment C on the R half
    bs = _bs_blocks(float(eta), N)
    psi3 = np.zeros((N, N, N))  # (A, R, C)
    for n in range(N):
        amp = psi_ar[n, n]
        if amp == 0.0:
            continue
        col = bs[n][:, 0]
        j = np.arange(len(col))
        psi3[n, n - j, j] = amp * col
    # two-mode squeezer on (A, vacuum B)
    sq = _squeezer_blocks(float(kappa), N)
    psi4 = np.zeros((N, N, N, N))  # (A, B, R, C)
    for n in range(N):
        block = psi3[n]
        if not block.any():
            continue
        col = sq[n][:, 0]
        j = np.arange(len(col))
        psi4[n + j, j] = col[:, None, None] * block[None, :, :]

    s_ar = _gram_entropy(psi4.transpose(0, 2, 1, 3).reshape(N * N, N * N))
    s_br = _gram_entropy(psi4.transpose(1, 2, 0, 3).reshape(N * N, N * N))
    s_r = _gram_entropy(psi4.transpose(2, 0, 1, 3).reshape(N, N**3))
    s_abr = _gram_entropy(psi4.transpose(3, 0, 1, 2).reshape(N, N**3))  # = S(C), purity
    return s_ar + s_br - s_r - s_abr


def verify_displaced_thermal_mixture(E, E_prime, N, grid=(64, 64), radius=None):
    """Max entrywise deviation between thermal(E) and the Gaussian-displaced
    mixture of thermal(E_prime) states, integrated on a polar quadrature grid."""
    if not 0.0 <= E_prime <= E:
        raise DomainError(f"need 0 <= E' <= E, got E'={E_prime}, E={E}")
    target = thermal_fock(E, N).matrix
    if E_prime == E:
        return 0.0
    v = E - E_prime
    n_r, n_theta = grid
    r_required = math.sqrt(v * math.log(1e10))
    if radius is None:
        radius = r_required
    elif radius < r_required:
        raise QuadratureError(
            f"quadrature radius {radius} misses Gaussian mass; need >= {r_required:.4g}"
        )
    # radial integral in u = r^2 with normalized weight exp(-u/v)/v
    nodes, weights = np.polynomial.legendre.leggauss(n_r)
    u = 0.5 * (nodes + 1.0) * radius**2
    w = 0.5 * radius**2 * weights * np.exp(-u / v) / v
    # uniform angles average to a harmonic mask on the Fock matrix entries
    m = np.arange(N)
    mask = ((m[:, None] - m[None, :]) % n_theta == 0).astype(float)
    omega = thermal_fock(E_prime, N).matrix
    mixture = np.zeros((N, N))
    for ui, wi in zip(u, w):
        D = displacement_unitary(math.sqrt(ui), N)
        mixture += wi * np.real(D @ omega @ D.conj().T)
    mixture *= mask
    return float(np.abs(mixture - target).max())


def random_one_mode_state(rng, N, support=10, rotations=6):
    """Seeded random state: Dirichlet-weighted diagonal mixture on the lowest
    levels, stirred by Haar-random rotations of random level pairs."""
    if support > N:
        raise DomainError("support exceeds the cutoff")
    p = rng.dirichlet(np.ones(support))
    rho = np.zeros((N, N), dtype=complex)
    rho[:support, :support] = np.diag(p)
    for _ in range(rotations):
        i, j = rng.choice(support + 2, size=2, replace=False)
        rho = _rotate_pair(rho, i, j, rng)
    rho = 0.5 * (rho + rho.conj().T)
    return TruncatedState(rho, cutoff=N, modes=1, tail_bound=0.0)


def random_two_mode_state(rng, N, support=4, rotations=8):
    """Seeded random two-mode state with bounded per-mode support."""
    if support > N:
        raise DomainError("support exceeds the cutoff")
    dim = N * N
    levels = [a * N + b for a in range(support) for b in range(support)]
    p = rng.dirichlet(np.ones(len(levels)))
    rho = np.zeros((dim, dim), dtype=complex)
    rho[np.ix_(levels, levels)] = np.diag(p)
    for _ in range(rotations):
        i, j = rng.choice(levels, size=2, replace=False)
        rho = _rotate_pair(rho, i, j, rng)
    rho = 0.5 * (rho + rho.conj().T)
    return TruncatedState(rho, cutoff=N, modes=2, tail_bound=0.0)


def _rotate_pair(rho, i, j, rng):
    """Conjugate by a Haar-random U(2) block on basis states i, j."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    u = np.eye(rho.shape[0], dtype=complex)
    u[np.ix_([i, j], [i, j])] = q
    return u @ rho @ u.conj().T
