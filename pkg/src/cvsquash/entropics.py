"""Closed-form scalar entropic functions for thermal bosonic states.

Everything here is a pure function of real parameters, in nats.  All
functions accept scalars or numpy arrays (elementwise) except
``g_inverse`` and the functions built on it, which are scalar.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, SingularPointError

# Below this energy the direct formula for g loses digits to cancellation;
# the series g(E) = E(1 - ln E) + E^2/2 + O(E^3 ln E) is exact to 1e-16 there.
_G_SERIES_CUTOFF = 1e-8

#: absolute tolerance (in energy) for the bracketed inversion of g
TOL_ROOT = 1e-12


@dataclass(frozen=True)
class ChannelParam:
    """A one-mode Gaussian channel: attenuator (eta) or amplifier (kappa)."""

    kind: str  # "attenuator" | "amplifier"
    value: float

    def __post_init__(self):
        if self.kind == "attenuator":
            if not 0.0 <= self.value <= 1.0:
                raise DomainError(f"attenuator transmissivity must be in [0, 1], got {self.value}")
        elif self.kind == "amplifier":
            if not self.value >= 1.0:
                raise DomainError(f"amplifier gain must be >= 1, got {self.value}")
        else:
            raise DomainError(f"unknown channel kind {self.kind!r}")

    @classmethod
    def attenuator(cls, eta):
        return cls("attenuator", float(eta))

    @classmethod
    def amplifier(cls, kappa):
        return cls("amplifier", float(kappa))


def _check(condition, message):
    if not condition:
        raise DomainError(message)


def g(E):
    """Entropy g(E) = (E+1) ln(E+1) - E ln E of a thermal state with mean energy E."""
    arr = np.asarray(E, dtype=float)
    _check(not np.any(np.isnan(arr)) and np.all(arr >= 0.0), f"mean energy must be >= 0, got {E}")
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        # E*log1p(1/E) + log1p(E) is cancellation-free for all E > 0
        direct = arr * np.log1p(1.0 / arr) + np.log1p(arr)
        series = arr * (1.0 - np.log(arr)) + 0.5 * arr * arr
    out = np.where(arr >= _G_SERIES_CUTOFF, direct, series)
    out = np.where(arr == 0.0, 0.0, out)
    return out if out.ndim else float(out)


def g_inverse(s):
    """The unique E >= 0 with g(E) = s.  Scalar, bracketed root-finding."""
    s = float(s)
    _check(s >= 0.0 and np.isfinite(s), f"entropy must be >= 0 and finite, got {s}")
    if s == 0.0:
        return 0.0
    # g(E) >= ln(E+1), so g(e^s) > s and [0, e^s] brackets the root.
    hi = np.exp(min(s, 700.0))
    return brentq(lambda E: g(E) - s, 0.0, hi, xtol=TOL_ROOT, rtol=8.9e-16)


def psi(kappa, E, eta):
    """psi_{E,kappa}(eta) = g(kappa E + kappa - eta E - 1) - g((1-eta) E)."""
    kappa, E, eta = _as_params(kappa, E, eta)
    return _sub(g(kappa * E + kappa - eta * E - 1.0), g((1.0 - eta) * E))


def psi_second_derivative(kappa, E, eta):
    """Closed form of the second eta-derivative of psi; nonnegative on its domain."""
    kappa, E, eta = _as_params(kappa, E, eta)
    if np.any(np.asarray(eta) >= 1.0):
        raise SingularPointError("psi'' is singular at eta = 1; use psi directly there")
    num = E * (E + 1.0) * (kappa - 1.0) * ((kappa + 1.0 - 2.0 * eta) * E + kappa)
    den = (
        (1.0 - eta)
        * ((kappa - eta) * E + kappa - 1.0)
        * ((kappa - eta) * E + kappa)
        * ((1.0 - eta) * E + 1.0)
    )
    with np.errstate(invalid="ignore"):
        out = np.asarray(num / den)
    # kappa = 1 with E = 0 hits 0/0; the value is 0 by the vanishing numerator factors
    out = np.where(np.asarray(num) == 0.0, 0.0, out)
    return out if out.ndim else float(out)


def gap_f(kappa, E):
    """Difference between the closed-form upper and lower squashed-entanglement bounds."""
    kappa, E = _as_params(kappa, E)
    return _sub(g((kappa - 0.5) * E + kappa - 1.0) - g(0.5 * E), np.log(2.0 * kappa - 1.0))


def h(kappa, x):
    """h_kappa(x) = g(kappa x + kappa - 1) + g((kappa-1)(x+1)) - g(x)."""
    kappa, x = _as_params(kappa, x)
    return _sub(g(kappa * x + kappa - 1.0) + g((kappa - 1.0) * (x + 1.0)), g(x))


def moe_amplifier(kappa, s):
    """Minimum output entropy of the amplifier at input entropy s (thermal minimizer)."""
    _check(kappa >= 1.0, f"amplifier gain must be >= 1, got {kappa}")
    return g(kappa * g_inverse(s) + kappa - 1.0)


def moe_complement(kappa, s):
    """Minimum output entropy of the amplifier's complementary channel at input entropy s."""
    _check(kappa >= 1.0, f"amplifier gain must be >= 1, got {kappa}")
    return g((kappa - 1.0) * (g_inverse(s) + 1.0))


def cond_epi_rhs(kappa, s):
    """Conditional-EPI lower bounds on the two output conditional entropies.

    Returns (ln(kappa e^s + kappa - 1), ln((kappa-1) e^s + kappa)) for conditional
    input entropy s (which may be negative).
    """
    kappa = np.asarray(kappa, dtype=float)
    _check(np.all(kappa >= 1.0), f"amplifier gain must be >= 1, got {kappa}")
    s = np.asarray(s, dtype=float)
    with np.errstate(divide="ignore"):
        first = np.logaddexp(s + np.log(kappa), np.log(kappa - 1.0))
        second = np.logaddexp(s + np.log(kappa - 1.0), np.log(kappa))
    if first.ndim == 0:
        return float(first), float(second)
    return first, second


def cmi_cosh_lower(kappa, s):
    """EPI-derived lower bound ln(2k(k-1) cosh s + k^2 + (k-1)^2) on the conditional
    mutual information of any extension; minimized at s = 0 with value 2 ln(2k-1)."""
    kappa = np.asarray(kappa, dtype=float)
    _check(np.all(kappa >= 1.0), f"amplifier gain must be >= 1, got {kappa}")
    s = np.asarray(s, dtype=float)
    out = np.log(2.0 * kappa * (kappa - 1.0) * np.cosh(s) + kappa**2 + (kappa - 1.0) ** 2)
    return out if out.ndim else float(out)


def _as_params(kappa, E, eta=None):
    kappa = np.asarray(kappa, dtype=float)
    E = np.asarray(E, dtype=float)
    _check(np.all(kappa >= 1.0), f"squeezing gain must be >= 1, got {kappa}")
    _check(np.all(E >= 0.0), f"mean energy must be >= 0, got {E}")
    if eta is None:
        return kappa, E
    eta = np.asarray(eta, dtype=float)
    _check(np.all((eta >= 0.0) & (eta <= 1.0)), f"transmissivity must be in [0, 1], got {eta}")
    return kappa, E, eta


def _sub(a, b):
    out = np.asarray(a) - np.asarray(b)
    return out if out.ndim else float(out)
