"""Switch failure rates from a MIL-HDBK-217 style part-stress model.

A unidirectional switch fails at ``lambda_b * pi_T * pi_Q * pi_E * prod(extra)``
FIT, where only the Arrhenius temperature factor ``pi_T`` differs between
redundant configurations. A bidirectional switch is an anti-parallel pair,
so its rate is twice the unidirectional one, split into open- and
short-circuit modes by the short-circuit fraction ``chi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import ReliabilityError
from .units import ZERO_CELSIUS_K, fit_to_per_hour

__all__ = [
    "DEFAULT_ACTIVATION_K",
    "THYRISTOR_SHORT_FRACTION",
    "PartStressParams",
    "SwitchRates",
    "CoverageParams",
    "temperature_factor",
    "unidirectional_rate",
    "bidirectional_rate",
    "split_rates",
    "rate_ratio_from_temps",
    "switch_rates",
]

# Arrhenius constant for a thyristor pair, kelvin.
DEFAULT_ACTIVATION_K = 3082.0
# Fraction of thyristor faults that are short circuits.
THYRISTOR_SHORT_FRACTION = 0.98
REFERENCE_TEMP_K = 298.0


def _check_temp(t_j, name="t_j"):
    if not t_j > -ZERO_CELSIUS_K:
        raise ReliabilityError(f"{name}={t_j!r} degC is at or below absolute zero (-273)")


@dataclass(frozen=True)
class PartStressParams:
    """Part-stress factors for one unidirectional switch.

    ``lambda_b`` is in FIT, ``a`` in kelvin; ``extra_pi`` maps names of any
    further multiplicative factors (voltage stress, current rating, ...) to
    their values.
    """

    lambda_b: float
    pi_q: float = 1.0
    pi_e: float = 1.0
    extra_pi: dict = field(default_factory=dict)
    a: float = DEFAULT_ACTIVATION_K

    def __post_init__(self):
        for name in ("lambda_b", "pi_q", "pi_e", "a"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ReliabilityError(f"{name} must be finite and > 0, got {v!r}")
        for name, v in self.extra_pi.items():
            if not (math.isfinite(v) and v > 0):
                raise ReliabilityError(f"factor {name} must be finite and > 0, got {v!r}")

    @property
    def stress_product(self):
        return self.pi_q * self.pi_e * math.prod(self.extra_pi.values())


@dataclass(frozen=True)
class SwitchRates:
    """Open/short-circuit rates of one bidirectional switch, per hour.

    Full-load rates ``lambda_oc``/``lambda_sc`` apply when one switch carries
    the whole current; ``*_h`` when two share it.
    """

    lambda_oc: float
    lambda_sc: float
    lambda_oc_h: float
    lambda_sc_h: float

    def __post_init__(self):
        for name in ("lambda_oc", "lambda_sc", "lambda_oc_h", "lambda_sc_h"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ReliabilityError(f"{name} must be finite and >= 0, got {v!r}")

    @property
    def lambda_sw(self):
        return self.lambda_oc + self.lambda_sc

    @property
    def lambda_sw_h(self):
        return self.lambda_oc_h + self.lambda_sc_h

    @classmethod
    def from_totals(cls, lambda_sw, lambda_sw_h=None, chi=THYRISTOR_SHORT_FRACTION):
        """Build from bidirectional totals (per hour) and a short-circuit fraction."""
        lambda_sw_h = lambda_sw if lambda_sw_h is None else lambda_sw_h
        sc, oc = split_rates(lambda_sw, chi)
        sc_h, oc_h = split_rates(lambda_sw_h, chi)
        return cls(oc, sc, oc_h, sc_h)

    def scaled(self, k):
        return SwitchRates(
            self.lambda_oc * k, self.lambda_sc * k, self.lambda_oc_h * k, self.lambda_sc_h * k
        )


@dataclass(frozen=True)
class CoverageParams:
    """Fault-coverage probabilities and failure-mode split.

    ``p_s`` is the probability that detection, isolation and reconfiguration
    all succeed. In the series-standby arrangement it is ``gamma * p_s``.
    """

    p_s: float = 1.0
    gamma: float = 1.0
    chi: float = THYRISTOR_SHORT_FRACTION

    def __post_init__(self):
        for name in ("p_s", "gamma", "chi"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ReliabilityError(f"{name} must lie in [0, 1], got {v!r}")

    @property
    def p_series_standby(self):
        return self.gamma * self.p_s


def temperature_factor(t_j, a=DEFAULT_ACTIVATION_K):
    """Arrhenius factor ``exp(-a (1/(t_j+273) - 1/298))``; 1 at 25 degC."""
    _check_temp(t_j)
    return math.exp(-a * (1.0 / (t_j + ZERO_CELSIUS_K) - 1.0 / REFERENCE_TEMP_K))


def unidirectional_rate(p: PartStressParams, t_j) -> float:
    """Failure rate of one unidirectional switch at junction temperature ``t_j``, FIT."""
    return p.lambda_b * temperature_factor(t_j, p.a) * p.stress_product


def bidirectional_rate(p: PartStressParams, t_j) -> float:
    """Anti-parallel pair: twice the unidirectional rate, FIT."""
    return 2.0 * unidirectional_rate(p, t_j)


def split_rates(lambda_sw, chi):
    """Return ``(lambda_sc, lambda_oc)`` with ``chi`` of faults short circuits."""
    if not 0.0 <= chi <= 1.0:
        raise ReliabilityError(f"chi must lie in [0, 1], got {chi!r}")
    sc = chi * lambda_sw
    # remainder instead of (1 - chi) * lambda_sw so sc + oc reproduces lambda_sw
    oc = lambda_sw - sc
    return sc, oc


def rate_ratio_from_temps(t_j, t_j_h, a=DEFAULT_ACTIVATION_K):
    """Half-load to full-load rate ratio implied by the two junction temperatures."""
    _check_temp(t_j)
    _check_temp(t_j_h, "t_j_h")
    return math.exp(a * (1.0 / (t_j + ZERO_CELSIUS_K) - 1.0 / (t_j_h + ZERO_CELSIUS_K)))


def switch_rates(p: PartStressParams, t_j, t_j_h, chi=THYRISTOR_SHORT_FRACTION) -> SwitchRates:
    """Per-hour :class:`SwitchRates` at full-load ``t_j`` and half-load ``t_j_h``."""
    full = fit_to_per_hour(bidirectional_rate(p, t_j))
    half = fit_to_per_hour(bidirectional_rate(p, t_j_h))
    return SwitchRates.from_totals(full, half, chi)
