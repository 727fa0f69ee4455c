"""Named verification suites: grid and spot checks behind `cvsquash verify`.

Each suite returns a VerifyReport whose max_violation is the largest amount by
which any checked inequality or identity was broken (0 when everything holds
with slack).  Suites are deterministic given their seed.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import bounds as bd
from . import entropics as se
from . import fock
from .errors import CutoffError
from .states import (
    attenuated_tmsv_cov,
    extension_family,
    gamma_amplified,
    gamma_attenuated,
    gaussian_cmi,
    tms_thermal_state,
)
from .symplectic import gaussian_entropy, marginal

LN_E_OVER_2 = 1.0 - math.log(2.0)


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    checks_run: int
    max_violation: float
    tolerance: float
    passed: bool
    seed: int = 0
    skipped: tuple = field(default_factory=tuple)

    @classmethod
    def build(cls, suite, checks_run, max_violation, tolerance, seed=0, skipped=()):
        return cls(
            suite=suite,
            checks_run=checks_run,
            max_violation=float(max_violation),
            tolerance=float(tolerance),
            passed=bool(max_violation <= tolerance),
            seed=seed,
            skipped=tuple(skipped),
        )


SUITES = {}


def _suite(fn):
    SUITES[fn.__name__.replace("verify_", "").replace("_", "-")] = fn
    return fn


@_suite
def verify_gap(tolerance=1e-12, seed=0):
    """Theorem-1 gap: 0 <= f <= ln(e/2), decreasing in E, vanishing at large E."""
    kappa = np.linspace(1.0, 10.0, 500)[:, None]
    E = np.linspace(0.0, 100.0, 500)[None, :]
    f = se.gap_f(kappa, E)
    violations = [
        float((f - LN_E_OVER_2).max()),
        float((-f).max()),
        float(np.diff(f, axis=1).max()),  # monotone decreasing in E
        se.gap_f(2.0, 1e3) - 1e-3,
    ]
    return VerifyReport.build("gap", f.size + 1, max(violations), tolerance, seed)


@_suite
def verify_convexity(tolerance=1e-6, seed=0):
    """psi'' >= 0 and agreement with central finite differences of psi.

    The five-point stencil keeps the truncation error below tolerance near the
    eta = 1 singularity; the step shrinks proportionally to (1 - eta) there.
    The finite-difference comparison skips kappa = 1, where psi vanishes
    identically and the quotient is pure roundoff noise.
    """
    worst = 0.0
    checks = 0
    kappas = np.linspace(1.0, 10.0, 30)
    energies = np.linspace(0.0, 10.0, 30)
    etas = np.linspace(0.05, 0.999, 30)
    for eta in etas:
        delta = min(max(0.02 * (1.0 - eta), 4e-5), 0.5 * eta)
        for kappa in kappas:
            closed = se.psi_second_derivative(kappa, energies, eta)
            worst = max(worst, float((-closed).max() - 1e-12))
            if kappa == kappas[0]:
                checks += len(energies)
                continue
            fd = (
                -se.psi(kappa, energies, eta + 2.0 * delta)
                + 16.0 * se.psi(kappa, energies, eta + delta)
                - 30.0 * se.psi(kappa, energies, eta)
                + 16.0 * se.psi(kappa, energies, eta - delta)
                - se.psi(kappa, energies, eta - 2.0 * delta)
            ) / (12.0 * delta**2)
            rel = np.abs(fd - closed) / np.maximum(np.abs(closed), 1.0)
            worst = max(worst, float(rel.max()))
            checks += len(energies)
    return VerifyReport.build("convexity", checks, worst, tolerance, seed)


@_suite
def verify_jensen(tolerance=1e-10, seed=0):
    """Extension-family CMI: closed form at eta = 1/2, eta-symmetry, minimum at 1/2."""
    worst = 0.0
    checks = 0
    for kappa in np.linspace(1.0, 10.0, 50):
        for E in np.linspace(0.0, 50.0, 50):
            half = gaussian_cmi(extension_family(kappa, E, 0.5), "A", "B", "R")
            closed = se.g((kappa - 0.5) * E + kappa - 1.0) - se.g(0.5 * E)
            worst = max(worst, abs(0.5 * half - closed))
            checks += 1
    for kappa in (1.0, 1.5, 2.0, 3.0, 5.0):
        for E in (0.0, 0.1, 0.5, 1.0, 5.0, 20.0):
            half = gaussian_cmi(extension_family(kappa, E, 0.5), "A", "B", "R")
            for eta in (0.0, 0.1, 0.25, 0.4, 0.5, 0.75):
                lo = gaussian_cmi(extension_family(kappa, E, eta), "A", "B", "R")
                hi = gaussian_cmi(extension_family(kappa, E, 1.0 - eta), "A", "B", "R")
                worst = max(worst, abs(lo - hi) - 1e-2 * tolerance, half - lo)
                checks += 1
    return VerifyReport.build("jensen", checks, worst, tolerance, seed)


@_suite
def verify_corollary_map(tolerance=1e-12, seed=7, points=1000):
    """gamma states coincide entrywise with the mapped squeezed thermal-vacuum states."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(points):
        E = rng.uniform(0.0, 10.0)
        eta = rng.uniform(0.0, 1.0)
        kp, ep = bd.tms_equivalent_params(se.ChannelParam.attenuator(eta), E)
        dev = np.abs(gamma_attenuated(eta, E).cov - tms_thermal_state(kp, ep).cov).max()
        kappa = rng.uniform(1.0, 5.0)
        kp, ep = bd.tms_equivalent_params(se.ChannelParam.amplifier(kappa), E)
        dev_amp = np.abs(gamma_amplified(kappa, E).cov - tms_thermal_state(kp, ep).cov).max()
        worst = max(worst, float(dev), float(dev_amp))
    return VerifyReport.build("corollary-map", 2 * points, worst, tolerance, seed)


@_suite
def verify_separation(tolerance=1e-12, seed=0):
    """Classical squashed entanglement strictly dominates the upper bound."""
    worst = 0.0
    checks = 0
    for kappa in (1.1, 1.5, 2.0, 3.0, 5.0):
        for E in (0.1, 0.5, 1.0, 5.0, 50.0):
            if bd.separation_check(kappa, E) <= 0.0:
                worst = max(worst, -bd.separation_check(kappa, E) + 1.0)
            checks += 1
        worst = max(worst, abs(bd.separation_check(kappa, 0.0)))
        checks += 1
    for E in (0.0, 0.5, 2.0, 50.0):
        worst = max(worst, abs(bd.separation_check(1.0, E)))
        checks += 1
    return VerifyReport.build("separation", checks, worst, tolerance, seed)


@_suite
def verify_epi_chain(tolerance=1e-9, seed=0):
    """Conditional-EPI chain on the Gaussian extension family."""
    worst = 0.0
    checks = 0
    for kappa in (1.0, 1.2, 1.5, 2.0, 3.0, 5.0, 10.0):
        floor = 2.0 * math.log(2.0 * kappa - 1.0)
        for E in (0.0, 0.1, 0.5, 1.0, 5.0, 20.0):
            for eta in (0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0):
                ar = attenuated_tmsv_cov(eta, E)
                s = gaussian_entropy(ar) - gaussian_entropy(marginal(ar, [1]))
                cmi = gaussian_cmi(extension_family(kappa, E, eta), "A", "B", "R")
                cosh_bound = se.cmi_cosh_lower(kappa, s)
                epi_a, epi_b = se.cond_epi_rhs(kappa, s)
                worst = max(
                    worst,
                    cosh_bound - cmi,
                    floor - cosh_bound,
                    abs(cosh_bound - (epi_a + epi_b - s)) - 1e-3 * tolerance,
                )
                checks += 1
    return VerifyReport.build("epi-chain", checks, worst, tolerance, seed)


def oracle_cmi_grid():
    return [
        (kappa, E, eta)
        for kappa in (1.5, 2.0)
        for E in (0.5, 1.0, 2.0)
        for eta in (0.0, 0.5, 1.0)
    ]


def oracle_channel_deviations():
    """Fock-route vs closed-form output entropies of the three channels on
    thermal inputs, at rule-selected cutoffs.  Returns a list of deviations."""
    deviations = []
    for kappa in (1.5, 2.0):
        for E in (0.5, 1.0, 2.0):
            N = fock.required_cutoff(kappa * E + kappa - 1.0)
            state = fock.thermal_fock(E, N)
            amp = se.ChannelParam.amplifier(kappa)
            out = fock.spectral_entropy(fock.apply_channel_fock(state, amp))
            comp = fock.spectral_entropy(fock.apply_channel_fock(state, amp, complement=True))
            deviations.append(abs(out - se.g(kappa * E + kappa - 1.0)))
            deviations.append(abs(comp - se.g((kappa - 1.0) * (E + 1.0))))
            for eta in (0.0, 0.5, 1.0):
                att = se.ChannelParam.attenuator(eta)
                out = fock.spectral_entropy(fock.apply_channel_fock(state, att))
                deviations.append(abs(out - se.g(eta * E)))
    return deviations


def oracle_cmi_deviations(cmi_cap=40):
    """Fock-route vs covariance-route CMI on the standard grid.

    Points whose rule-selected cutoff exceeds the per-mode cap are skipped
    with a hint.  Returns (deviations, skipped)."""
    deviations = []
    skipped = []
    for kappa, E, eta in oracle_cmi_grid():
        e_max = max(kappa * (E + 1.0) - min(eta, 1.0 - eta) * E - 1.0, E)
        N = fock.required_cutoff(e_max)
        if N > cmi_cap:
            skipped.append(f"cmi({kappa},{E},{eta}): rule asks N={N} > cap {cmi_cap}")
            continue
        reference = gaussian_cmi(extension_family(kappa, E, eta), "A", "B", "R")
        deviations.append(abs(fock.oracle_cmi(kappa, E, eta, N) - reference))
    return deviations, skipped


@_suite
def verify_oracle(tolerance=1e-5, seed=7, cmi_cap=40):
    """Cross-formalism agreement between the Fock oracle and the covariance route."""
    channel = oracle_channel_deviations()
    cmi, skipped = oracle_cmi_deviations(cmi_cap)
    worst = max(channel + cmi)
    return VerifyReport.build(
        "oracle", len(channel) + len(cmi), worst, tolerance, seed, skipped
    )


def moe_spot_check(seed=7, samples=200, cutoff=40, kappas=(1.2, 2.0), tolerance=1e-6):
    """Theorem 4/5 spot check: no random state beats the thermal output-entropy bound."""
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(samples):
        state = fock.random_one_mode_state(rng, cutoff)
        s_in = fock.spectral_entropy(state)
        for kappa in kappas:
            amp = se.ChannelParam.amplifier(kappa)
            out = fock.spectral_entropy(
                fock.apply_channel_fock(state, amp, enforce_cutoff=False)
            )
            comp = fock.spectral_entropy(
                fock.apply_channel_fock(state, amp, complement=True, enforce_cutoff=False)
            )
            worst = max(
                worst,
                se.moe_amplifier(kappa, s_in) - out,
                se.moe_complement(kappa, s_in) - comp,
            )
    return VerifyReport.build(
        "moe-spot", samples * 2 * len(kappas), worst, tolerance, seed
    )


def epi_spot_check(seed=7, samples=50, cutoff=12, kappa=1.5, tolerance=1e-6):
    """Theorem 6 spot check: conditional output entropies after the squeezer
    dominate the conditional-EPI right-hand sides for random two-mode inputs."""
    rng = np.random.default_rng(seed)
    N = cutoff
    blocks = fock._squeezer_blocks(float(kappa), N)
    worst = -math.inf
    for _ in range(samples):
        omega = fock.random_two_mode_state(rng, N)  # modes (A, R)
        s_cond_in = fock.spectral_entropy(omega) - fock.spectral_entropy(
            fock.partial_trace(omega, [1])
        )
        rho_ar = np.zeros((N * N, N * N), dtype=complex)
        rho_br = np.zeros((N * N, N * N), dtype=complex)
        rho_r = np.zeros((N, N), dtype=complex)
        w, V = np.linalg.eigh(omega.matrix)
        for p, vec in zip(w, V.T):
            if p < 1e-15:
                continue
            psi = _squeeze_with_spectator(vec.reshape(N, N), blocks, N)  # (A, B, R)
            m_ar = psi.transpose(0, 2, 1).reshape(N * N, N)
            rho_ar += p * (m_ar @ m_ar.conj().T)
            m_br = psi.transpose(1, 2, 0).reshape(N * N, N)
            rho_br += p * (m_br @ m_br.conj().T)
            m_r = psi.transpose(2, 0, 1).reshape(N, N * N)
            rho_r += p * (m_r @ m_r.conj().T)
        s_r = fock.entropy_of_spectrum(np.linalg.eigvalsh(rho_r))
        s_a_cond = fock.entropy_of_spectrum(np.linalg.eigvalsh(rho_ar)) - s_r
        s_b_cond = fock.entropy_of_spectrum(np.linalg.eigvalsh(rho_br)) - s_r
        epi_a, epi_b = se.cond_epi_rhs(kappa, s_cond_in)
        worst = max(worst, epi_a - s_a_cond, epi_b - s_b_cond)
    return VerifyReport.build("epi-spot", samples * 2, worst, tolerance, seed)


def _squeeze_with_spectator(vec_ar, blocks, N):
    """Two-mode squeezer on (A, vacuum B) with spectator R; returns psi(A, B, R)."""
    psi = np.zeros((N, N, N), dtype=vec_ar.dtype)
    for n in range(N):
        row = vec_ar[n]
        if not row.any():
            continue
        col = blocks[n][:, 0]
        j = np.arange(len(col))
        psi[n + j, j] = col[:, None] * row[None, :]
    return psi


def run_suite(name, tolerance=None, seed=None):
    if name not in SUITES:
        raise KeyError(f"unknown verification suite {name!r}; choose from {sorted(SUITES)}")
    kwargs = {}
    if tolerance is not None:
        kwargs["tolerance"] = tolerance
    if seed is not None:
        kwargs["seed"] = seed
    return SUITES[name](**kwargs)
