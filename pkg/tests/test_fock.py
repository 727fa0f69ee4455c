"""Unit tests for the truncated Fock-space oracle."""

import math

import numpy as np
import pytest

from cvsquash import fock
from cvsquash.entropics import ChannelParam, g
from cvsquash.errors import CutoffError, DomainError, QuadratureError
from cvsquash.states import extension_family, gaussian_cmi


class TestCutoffRule:
    def test_geometric_tail(self):
        assert fock.geometric_tail(0.0, 10) == 0.0
        assert fock.geometric_tail(1.0, 10) == pytest.approx(2.0**-10)

    def test_required_cutoff(self):
        N = fock.required_cutoff(1.0)
        assert fock.geometric_tail(1.0, N) < 1e-10
        assert fock.geometric_tail(1.0, N - 1) >= 1e-10

    def test_vacuum_needs_minimum(self):
        assert fock.required_cutoff(0.0) == 2

    def test_check_cutoff_slack(self):
        # the rule tolerates a small overshoot of the tail target
        N = fock.required_cutoff(3.0)
        fock.check_cutoff(N - 1, 3.0)
        with pytest.raises(CutoffError) as err:
            fock.check_cutoff(N // 2, 3.0)
        assert err.value.required == N


class TestThermal:
    def test_trace_and_energy(self):
        state = fock.thermal_fock(1.0, 64)
        assert state.trace == pytest.approx(1.0, abs=1e-10)
        assert state.mean_photon_number() == pytest.approx(1.0, abs=1e-8)

    def test_entropy(self):
        state = fock.thermal_fock(2.0, fock.required_cutoff(2.0))
        assert fock.spectral_entropy(state) == pytest.approx(g(2.0), abs=1e-8)

    def test_vacuum(self):
        state = fock.vacuum_fock(8)
        assert state.matrix[0, 0] == 1.0
        assert fock.spectral_entropy(state) == 0.0

    def test_tmsv_normalization(self):
        c = fock.tmsv_vector(1.0, 64)
        assert np.sum(c**2) == pytest.approx(1.0, abs=1e-10)


class TestUnitaries:
    @pytest.mark.parametrize("kappa", [1.0, 1.5, 3.0])
    def test_squeezer_orthogonal(self, kappa):
        U = fock.squeezer_unitary(kappa, 12)
        assert np.abs(U @ U.T - np.eye(144)).max() < 1e-12

    @pytest.mark.parametrize("eta", [0.0, 0.5, 1.0])
    def test_beam_splitter_orthogonal(self, eta):
        U = fock.beam_splitter_unitary(eta, 12)
        assert np.abs(U @ U.T - np.eye(144)).max() < 1e-12

    def test_beam_splitter_identity_at_one(self):
        assert np.allclose(fock.beam_splitter_unitary(1.0, 8), np.eye(64))

    def test_squeezer_identity_at_one(self):
        assert np.allclose(fock.squeezer_unitary(1.0, 8), np.eye(64))

    def test_squeezer_vacuum_gives_tmsv(self):
        # U_kappa |0,0> is the two-mode squeezed vacuum with E = kappa - 1
        kappa, N = 2.0, 40
        U = fock.squeezer_unitary(kappa, N)
        psi = U[:, 0].reshape(N, N)
        expected = fock.tmsv_vector(kappa - 1.0, N)
        # the truncation perturbs amplitudes only near the cutoff boundary
        assert np.abs(np.abs(psi) - expected)[: N // 2, : N // 2].max() < 1e-10
        assert np.abs(np.abs(psi) - expected).max() < 1e-5

    def test_beam_splitter_conserves_total_number(self):
        N = 10
        U = fock.beam_splitter_unitary(0.37, N)
        n_tot = np.add.outer(np.arange(N), np.arange(N)).ravel()
        mixing = U[np.not_equal.outer(n_tot, n_tot)]
        assert np.abs(mixing).max() == 0.0

    def test_displacement_unitary(self):
        D = fock.displacement_unitary(0.5, 48)
        assert np.abs(D @ D.conj().T - np.eye(48)).max() < 1e-10
        # coherent-state photon statistics from the vacuum column
        p = np.abs(D[:, 0]) ** 2
        assert p @ np.arange(48) == pytest.approx(0.25, abs=1e-10)


class TestPartialTrace:
    def test_product_state(self):
        a = fock.thermal_fock(1.0, 8).matrix
        b = fock.vacuum_fock(8).matrix
        joint = fock.TruncatedState(np.kron(a, b), cutoff=8, modes=2, tail_bound=0.25)
        reduced = fock.partial_trace(joint, [0])
        assert np.abs(reduced.matrix - a).max() < 1e-12

    def test_order_reversal(self):
        a = fock.thermal_fock(1.0, 6).matrix
        b = fock.vacuum_fock(6).matrix
        joint = fock.TruncatedState(np.kron(a, b), cutoff=6, modes=2, tail_bound=0.3)
        swapped = fock.partial_trace(joint, [1, 0])
        assert np.abs(swapped.matrix - np.kron(b, a)).max() < 1e-12

    def test_out_of_range(self):
        state = fock.thermal_fock(1.0, 8)
        with pytest.raises(DomainError):
            fock.partial_trace(state, [1])


class TestChannels:
    def test_attenuator_output_entropy(self):
        state = fock.thermal_fock(1.0, fock.required_cutoff(1.0))
        out = fock.apply_channel_fock(state, ChannelParam.attenuator(0.5))
        assert fock.spectral_entropy(out) == pytest.approx(g(0.5), abs=1e-8)

    def test_amplifier_output_entropy(self):
        kappa, E = 2.0, 1.0
        state = fock.thermal_fock(E, fock.required_cutoff(kappa * (E + 1.0) - 1.0))
        out = fock.apply_channel_fock(state, ChannelParam.amplifier(kappa))
        assert fock.spectral_entropy(out) == pytest.approx(g(3.0), abs=1e-6)

    def test_complement_output_entropy(self):
        kappa, E = 2.0, 1.0
        state = fock.thermal_fock(E, fock.required_cutoff(kappa * (E + 1.0) - 1.0))
        out = fock.apply_channel_fock(state, ChannelParam.amplifier(kappa), complement=True)
        assert fock.spectral_entropy(out) == pytest.approx(g(2.0), abs=1e-6)

    def test_identity_channels(self):
        state = fock.thermal_fock(1.0, fock.required_cutoff(1.0))
        for channel in (ChannelParam.attenuator(1.0), ChannelParam.amplifier(1.0)):
            out = fock.apply_channel_fock(state, channel)
            assert np.abs(out.matrix - state.matrix).max() < 1e-12

    def test_refusal(self):
        state = fock.thermal_fock(2.0, 16)
        with pytest.raises(CutoffError):
            fock.apply_channel_fock(state, ChannelParam.amplifier(2.0))

    def test_attenuator_complement_unsupported(self):
        state = fock.thermal_fock(1.0, 40)
        with pytest.raises(DomainError):
            fock.apply_channel_fock(state, ChannelParam.attenuator(0.5), complement=True)


class TestOracleCmi:
    def test_trivial_at_kappa_one(self):
        assert fock.oracle_cmi(1.0, 1.0, 0.5, 30) == pytest.approx(0.0, abs=1e-10)

    def test_agrees_with_covariance_route(self):
        kappa, E, eta = 1.5, 0.5, 0.5
        N = fock.required_cutoff(kappa * (E + 1.0) - 0.5 * E - 1.0)
        reference = gaussian_cmi(extension_family(kappa, E, eta), "A", "B", "R")
        assert fock.oracle_cmi(kappa, E, eta, N) == pytest.approx(reference, abs=1e-5)

    def test_refusal(self):
        with pytest.raises(CutoffError):
            fock.oracle_cmi(2.0, 2.0, 0.5, 20)


class TestDisplacedThermalMixture:
    def test_identity_holds(self):
        assert fock.verify_displaced_thermal_mixture(1.0, 0.4, 40) < 1e-9

    def test_degenerate_case(self):
        assert fock.verify_displaced_thermal_mixture(2.0, 2.0, 20) == 0.0

    def test_pure_displaced_vacuum(self):
        assert fock.verify_displaced_thermal_mixture(0.5, 0.0, 40) < 1e-9

    def test_quadrature_radius_check(self):
        with pytest.raises(QuadratureError):
            fock.verify_displaced_thermal_mixture(1.0, 0.4, 40, radius=0.5)

    def test_ordering_rejected(self):
        with pytest.raises(DomainError):
            fock.verify_displaced_thermal_mixture(0.4, 1.0, 40)


class TestRandomStates:
    def test_one_mode_valid(self):
        rng = np.random.default_rng(3)
        state = fock.random_one_mode_state(rng, 40)
        assert state.trace == pytest.approx(1.0, abs=1e-10)
        eigs = np.linalg.eigvalsh(state.matrix)
        assert eigs.min() > -1e-12

    def test_two_mode_valid(self):
        rng = np.random.default_rng(3)
        state = fock.random_two_mode_state(rng, 12)
        assert state.trace == pytest.approx(1.0, abs=1e-10)
        assert state.modes == 2

    def test_seeded_reproducibility(self):
        a = fock.random_one_mode_state(np.random.default_rng(11), 20)
        b = fock.random_one_mode_state(np.random.default_rng(11), 20)
        assert np.array_equal(a.matrix, b.matrix)
