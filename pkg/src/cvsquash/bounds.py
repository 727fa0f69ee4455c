"""Theorem-level bound computations: squashed and classical squashed entanglement."""

import math
from dataclasses import dataclass, field

import numpy as np

from .entropics import ChannelParam, g, g_inverse, h
from .errors import DomainError
from .states import extension_family, gaussian_cmi

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

#: skip the internal CMI cross-check above this energy scale: the 6x6
#: eigendecomposition loses more than the 1e-10 check tolerance to roundoff
_CROSS_CHECK_MAX_ENERGY = 1e4


@dataclass(frozen=True)
class BoundReport:
    lower: float
    upper: float
    exact: float = None
    provenance: tuple = ()
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.lower > self.upper + 1e-12:
            raise AssertionError(f"bound ordering violated: {self.lower} > {self.upper}")
        if self.exact is not None and not (
            self.lower - 1e-12 <= self.exact <= self.upper + 1e-12
        ):
            raise AssertionError(f"exact value {self.exact} outside bounds")

    def to_dict(self):
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "provenance": list(self.provenance),
            "parameters": dict(self.parameters),
        }


@dataclass(frozen=True)
class MinimizerResult:
    argmin_x: float
    min_value: float
    clipped: bool
    E_kappa: float


def esq_bounds_tms(kappa, E, cross_check=True):
    """Squashed-entanglement bounds for the squeezed thermal-vacuum state.

    lower = ln(2 kappa - 1); upper = g((kappa - 1/2) E + kappa - 1) - g(E/2),
    the halved conditional mutual information of the optimal (eta = 1/2)
    Gaussian extension.
    """
    if kappa < 1.0 or E < 0.0:
        raise DomainError(f"need kappa >= 1 and E >= 0, got {kappa}, {E}")
    lower = math.log(2.0 * kappa - 1.0)
    upper = g((kappa - 0.5) * E + kappa - 1.0) - g(0.5 * E)
    if cross_check and kappa * (E + 1.0) <= _CROSS_CHECK_MAX_ENERGY:
        cmi = gaussian_cmi(extension_family(kappa, E, 0.5), ("A",), ("B",), ("R",))
        if abs(0.5 * cmi - upper) > 1e-10:
            raise AssertionError(
                f"extension-family CMI {0.5 * cmi} disagrees with closed form {upper}"
            )
    return BoundReport(
        lower=lower,
        upper=upper,
        provenance=("theorem-1",),
        parameters={"kappa": kappa, "E": E},
    )


def tms_equivalent_params(channel, E):
    """Map (channel, TMSV energy E) to the (kappa', E') of the equivalent squeezed
    thermal-vacuum state."""
    if E < 0.0:
        raise DomainError(f"mean energy must be >= 0, got {E}")
    if channel.kind == "attenuator":
        eta = channel.value
        return (E + 1.0) / ((1.0 - eta) * E + 1.0), (1.0 - eta) * E
    kappa = channel.value
    return kappa * (E + 1.0) / ((kappa - 1.0) * E + kappa), (kappa - 1.0) * (E + 1.0)


def esq_bounds_channel_state(channel, E):
    """Squashed-entanglement bounds for a channel applied to half a TMSV of energy E."""
    if E < 0.0:
        raise DomainError(f"mean energy must be >= 0, got {E}")
    if channel.kind == "attenuator":
        eta = channel.value
        lower = math.log(((1.0 + eta) * E + 1.0) / ((1.0 - eta) * E + 1.0))
        upper = g(0.5 * (1.0 + eta) * E) - g(0.5 * (1.0 - eta) * E)
        provenance = ("corollary-1", "attenuator")
    else:
        kappa = channel.value
        lower = math.log(((kappa + 1.0) * E + kappa) / ((kappa - 1.0) * E + kappa))
        upper = g(0.5 * ((kappa + 1.0) * E + kappa - 1.0)) - g(0.5 * (kappa - 1.0) * (E + 1.0))
        provenance = ("corollary-1", "amplifier")
    kp, ep = tms_equivalent_params(channel, E)
    mapped = esq_bounds_tms(kp, ep, cross_check=False)
    if abs(mapped.lower - lower) > 1e-12 or abs(mapped.upper - upper) > 1e-12:
        raise AssertionError("corollary bounds disagree with the mapped state bounds")
    return BoundReport(
        lower=lower,
        upper=upper,
        provenance=provenance,
        parameters={"channel": channel.kind, "param": channel.value, "E": E},
    )


def channel_esq(channel):
    """Exact squashed entanglement of the channel; +inf at the divergent edge."""
    if channel.kind == "attenuator":
        eta = channel.value
        return math.inf if eta == 1.0 else math.log((1.0 + eta) / (1.0 - eta))
    kappa = channel.value
    return math.inf if kappa == 1.0 else math.log((kappa + 1.0) / (kappa - 1.0))


def secret_key_capacity(channel):
    """Secret-key capacity of the channel, as a comparison constant."""
    if channel.kind == "attenuator":
        eta = channel.value
        return math.inf if eta == 1.0 else math.log(1.0 / (1.0 - eta))
    kappa = channel.value
    return math.inf if kappa == 1.0 else math.log(kappa / (kappa - 1.0))


def _golden_section_min(fn, lo, hi, tol):
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fn(d)
    return 0.5 * (a + b)


def find_E_kappa(kappa, tol_s=1e-10):
    """Unconstrained minimizer of h_kappa, located in the entropy variable s = g(x)
    where h_kappa(g^{-1}(s)) is strictly convex."""
    if kappa <= 1.0:
        raise DomainError("h is identically zero at kappa = 1; no unique minimizer")

    def phi(s):
        return h(kappa, g_inverse(s))

    # double the bracket until phi is increasing at its right end
    s_hi = 1.0
    while phi(s_hi + 1e-4) <= phi(s_hi):
        s_hi *= 2.0
        if s_hi > 1e6:
            raise AssertionError("failed to bracket the minimizer of h")
    s_min = _golden_section_min(phi, 0.0, s_hi, tol_s)
    return g_inverse(s_min)


def classical_esq(kappa, E):
    """Classical squashed entanglement (1/2) min_{x in [0, E]} h_kappa(x).

    Returns the value together with the minimizer structure.
    """
    if kappa < 1.0 or E < 0.0:
        raise DomainError(f"need kappa >= 1 and E >= 0, got {kappa}, {E}")
    if kappa == 1.0:
        return 0.0, MinimizerResult(argmin_x=0.0, min_value=0.0, clipped=False, E_kappa=0.0)
    e_kappa = find_E_kappa(kappa)
    clipped = E < e_kappa
    argmin = E if clipped else e_kappa
    value = 0.5 * h(kappa, argmin)
    return value, MinimizerResult(argmin_x=argmin, min_value=value, clipped=clipped, E_kappa=e_kappa)


def separation_check(kappa, E):
    """Classical squashed entanglement minus the squashed-entanglement upper bound.

    Strictly positive for kappa > 1 and E > 0; zero at kappa = 1 or E = 0.
    """
    value, _ = classical_esq(kappa, E)
    return value - esq_bounds_tms(kappa, E, cross_check=False).upper
