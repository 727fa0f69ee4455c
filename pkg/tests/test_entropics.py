"""Unit tests for the closed-form entropic functions."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvsquash.entropics import (
    ChannelParam,
    cmi_cosh_lower,
    cond_epi_rhs,
    g,
    g_inverse,
    gap_f,
    h,
    moe_amplifier,
    moe_complement,
    psi,
    psi_second_derivative,
)
from cvsquash.errors import DomainError, SingularPointError

energies = st.floats(min_value=0.0, max_value=1e6, allow_nan=False)
positive_energies = st.floats(min_value=1e-6, max_value=1e6)
gains = st.floats(min_value=1.0, max_value=50.0)


class TestG:
    def test_vacuum(self):
        assert g(0.0) == 0.0

    def test_one_photon(self):
        assert g(1.0) == pytest.approx(2.0 * math.log(2.0), abs=1e-15)

    def test_matches_textbook_formula(self):
        for E in (0.3, 1.0, 7.5, 123.0):
            expected = (E + 1.0) * math.log(E + 1.0) - E * math.log(E)
            assert g(E) == pytest.approx(expected, rel=1e-14)

    def test_small_energy_series(self):
        # the direct formula would lose all digits here
        E = 1e-12
        assert g(E) == pytest.approx(E * (1.0 - math.log(E)), rel=1e-12)

    def test_large_energy_no_cancellation(self):
        # g(E) - (ln E + 1) -> 0 from above as E grows
        E = 1e15
        assert g(E) - (math.log(E) + 1.0) == pytest.approx(0.0, abs=1e-14)

    def test_array_input(self):
        out = g(np.array([0.0, 1.0, 2.0]))
        assert out.shape == (3,)
        assert out[0] == 0.0

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            g(-0.1)

    @given(E=positive_energies)
    def test_monotone(self, E):
        assert g(1.01 * E) > g(E)

    @given(E=positive_energies)
    def test_concave(self, E):
        # midpoint concavity on a fixed-ratio triple
        assert g(1.5 * E) >= 0.5 * (g(E) + g(2.0 * E)) - 1e-12


class TestGInverse:
    @given(E=st.floats(min_value=0.0, max_value=1e5))
    @settings(max_examples=200)
    def test_roundtrip(self, E):
        assert g_inverse(g(E)) == pytest.approx(E, rel=1e-9, abs=1e-9)

    def test_zero(self):
        assert g_inverse(0.0) == 0.0

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            g_inverse(-1.0)

    def test_large_entropy(self):
        s = 50.0
        assert g(g_inverse(s)) == pytest.approx(s, rel=1e-12)


class TestPsi:
    def test_endpoint_eta_one(self):
        # psi(1) = g(kappa E + kappa - E - 1) - g(0)
        kappa, E = 2.0, 3.0
        assert psi(kappa, E, 1.0) == pytest.approx(g(kappa * E + kappa - E - 1.0))

    def test_kappa_one_vanishes(self):
        assert psi(1.0, 4.0, 0.3) == pytest.approx(0.0, abs=1e-14)

    def test_second_derivative_nonnegative(self):
        for kappa in (1.0, 1.5, 3.0, 10.0):
            for E in (0.0, 0.5, 5.0):
                for eta in (0.0, 0.3, 0.9):
                    assert psi_second_derivative(kappa, E, eta) >= -1e-12

    def test_second_derivative_singular_at_one(self):
        with pytest.raises(SingularPointError):
            psi_second_derivative(2.0, 1.0, 1.0)

    def test_second_derivative_matches_finite_difference(self):
        kappa, E, eta, d = 2.5, 3.0, 0.4, 1e-4
        fd = (psi(kappa, E, eta + d) - 2.0 * psi(kappa, E, eta) + psi(kappa, E, eta - d)) / d**2
        assert psi_second_derivative(kappa, E, eta) == pytest.approx(fd, rel=1e-6)


class TestGap:
    def test_zero_at_kappa_one(self):
        assert gap_f(1.0, 5.0) == pytest.approx(0.0, abs=1e-14)

    def test_value_at_zero_energy(self):
        # f(kappa, 0) = g(kappa - 1) - ln(2 kappa - 1)
        assert gap_f(3.0, 0.0) == pytest.approx(g(2.0) - math.log(5.0), abs=1e-14)

    @given(kappa=gains, E=energies)
    @settings(max_examples=200)
    def test_bounded_by_ln_e_over_2(self, kappa, E):
        assert -1e-12 <= gap_f(kappa, E) <= 1.0 - math.log(2.0) + 1e-12


class TestH:
    def test_zero_at_kappa_one(self):
        assert h(1.0, 2.0) == pytest.approx(0.0, abs=1e-14)

    def test_value_at_origin(self):
        # h(0) = 2 g(kappa - 1)
        assert h(2.0, 0.0) == pytest.approx(2.0 * g(1.0), abs=1e-14)

    @given(kappa=st.floats(min_value=1.0, max_value=20.0), x=energies)
    @settings(max_examples=200)
    def test_nonnegative(self, kappa, x):
        assert h(kappa, x) >= -1e-12


class TestEpiForms:
    def test_cond_epi_rhs_at_zero(self):
        a, b = cond_epi_rhs(2.0, 0.0)
        assert a == pytest.approx(math.log(3.0))
        assert b == pytest.approx(math.log(3.0))

    def test_cond_epi_rhs_negative_entropy(self):
        a, b = cond_epi_rhs(2.0, -50.0)
        assert a == pytest.approx(math.log(1.0 + 2.0 * math.exp(-50.0)))
        assert b == pytest.approx(math.log(2.0 + math.exp(-50.0)))

    def test_cosh_identity(self):
        # ln(2k(k-1) cosh s + k^2 + (k-1)^2) = ln(k e^s + k - 1) + ln((k-1) e^s + k) - s
        for kappa in (1.0, 1.3, 4.0):
            for s in (-3.0, 0.0, 0.5, 10.0):
                a, b = cond_epi_rhs(kappa, s)
                assert cmi_cosh_lower(kappa, s) == pytest.approx(a + b - s, abs=1e-12)

    def test_cosh_minimum_at_zero(self):
        kappa = 3.0
        floor = 2.0 * math.log(2.0 * kappa - 1.0)
        assert cmi_cosh_lower(kappa, 0.0) == pytest.approx(floor)
        for s in (-2.0, -0.1, 0.1, 2.0):
            assert cmi_cosh_lower(kappa, s) > floor


class TestMoe:
    def test_amplifier_thermal_input(self):
        # the minimizer itself saturates the bound
        kappa, E = 2.0, 1.5
        assert moe_amplifier(kappa, g(E)) == pytest.approx(g(kappa * E + kappa - 1.0), rel=1e-10)

    def test_complement_thermal_input(self):
        kappa, E = 2.0, 1.5
        assert moe_complement(kappa, g(E)) == pytest.approx(
            g((kappa - 1.0) * (E + 1.0)), rel=1e-10
        )

    def test_vacuum_input(self):
        assert moe_amplifier(3.0, 0.0) == pytest.approx(g(2.0))
        assert moe_complement(3.0, 0.0) == pytest.approx(g(2.0))


class TestChannelParam:
    def test_attenuator_range(self):
        with pytest.raises(DomainError):
            ChannelParam.attenuator(1.2)

    def test_amplifier_range(self):
        with pytest.raises(DomainError):
            ChannelParam.amplifier(0.9)

    def test_unknown_kind(self):
        with pytest.raises(DomainError):
            ChannelParam("squeezer", 1.0)

    def test_valid(self):
        assert ChannelParam.attenuator(0.5).value == 0.5
        assert ChannelParam.amplifier(2.0).kind == "amplifier"
