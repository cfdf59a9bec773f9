"""The four component-level redundant SSFCL switch arrangements.

Two bidirectional switches can be placed in shunt (each with a series
relay) or in series (each with a parallel relay), and operated either both
at once (parallel, from a reliability point of view) or one at a time
(standby). This module holds their state diagrams, closed-form MTTFs, the
break-even conditions between them, and a sensitivity sweep over the
thermal operating point.

All rates are per hour and all MTTFs are in hours.
"""
from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass

from .exceptions import InfiniteMTTFError, ReliabilityError
from .failure import (
    DEFAULT_ACTIVATION_K,
    CoverageParams,
    SwitchRates,
    rate_ratio_from_temps,
)
from .markov import StateDiagram
from .thermal import ThermalStack
from .units import ZERO_CELSIUS_K

__all__ = [
    "Topology",
    "REDUNDANT",
    "ComparisonVerdict",
    "SHUNT_PARALLEL",
    "STANDBY",
    "SERIES_STANDBY",
    "BOUNDARY",
    "build_diagram",
    "mttf_closed_form",
    "perfect_coverage_mttf",
    "shunt_parallel_mttf_split",
    "series_standby_mttf_split",
    "perfect_coverage_winner",
    "boundary_constants",
    "temperature_boundary",
    "region_verdict",
    "imperfect_coverage_threshold",
    "imperfect_coverage_winner",
    "heatsink_condition",
    "SweepRow",
    "SWEEP_PARAMETERS",
    "sensitivity_sweep",
]


class Topology(str, enum.Enum):
    SHUNT_PARALLEL = "shunt_parallel"
    SHUNT_STANDBY = "shunt_standby"
    SERIES_PARALLEL = "series_parallel"
    SERIES_STANDBY = "series_standby"
    NON_REDUNDANT = "non_redundant"

    def __str__(self):
        return self.value

    @property
    def switches(self):
        return 1 if self is Topology.NON_REDUNDANT else 2


REDUNDANT = (
    Topology.SHUNT_PARALLEL,
    Topology.SHUNT_STANDBY,
    Topology.SERIES_PARALLEL,
    Topology.SERIES_STANDBY,
)

SHUNT_PARALLEL = Topology.SHUNT_PARALLEL.value
SERIES_STANDBY = Topology.SERIES_STANDBY.value
STANDBY = "standby"
BOUNDARY = "boundary"


@dataclass(frozen=True)
class ComparisonVerdict:
    """Outcome of a break-even test.

    ``value`` is the quantity being tested and ``boundary_value`` the
    threshold it is compared against; exact equality is reported as
    ``winner == "boundary"``.
    """

    winner: str
    value: float
    boundary_value: float
    inputs: dict


def _verdict(favoured, value, threshold, greater_wins, other, inputs):
    if value == threshold:
        winner = BOUNDARY
    elif (value > threshold) == greater_wins:
        winner = favoured
    else:
        winner = other
    return ComparisonVerdict(winner, float(value), float(threshold), dict(inputs))


# -- state diagrams ---------------------------------------------------------

_SSB_NOTE = (
    "series_standby diagram reproduces the closed-form MTTF only at full coverage (p=1)"
)


def build_diagram(t: Topology, r: SwitchRates, c: CoverageParams | None = None) -> StateDiagram:
    """State diagram of topology ``t``.

    State ``S1`` is the fault-free start; higher-numbered states are either
    degraded-but-working (transient) or failed (absorbing). Where the
    coverage probability is ``p``, a covered fault moves to the degraded
    state and an uncovered one fails the limiter outright.
    """
    t = Topology(t)
    c = CoverageParams() if c is None else c
    oc, sc, oc_h, sc_h = r.lambda_oc, r.lambda_sc, r.lambda_oc_h, r.lambda_sc_h
    p = c.p_s
    states = [f"S{k}" for k in range(1, 8)]
    if t is Topology.SHUNT_PARALLEL:
        # both switches share the load until the first fault
        tr = [
            ("S1", "S2", 2 * oc_h),
            ("S1", "S3", 2 * p * sc_h),
            ("S1", "S4", 2 * (1 - p) * sc_h),
            ("S2", "S5", oc),
            ("S2", "S6", sc),
            ("S3", "S6", oc),
            ("S3", "S7", sc),
        ]
        return StateDiagram(states, states[3:], tr, "S1")
    if t is Topology.SHUNT_STANDBY:
        # a covered short needs two relay operations (open main, close spare)
        tr = [
            ("S1", "S2", p * oc),
            ("S1", "S2", p * p * sc),
            ("S1", "S3", (1 - p) * oc),
            ("S1", "S4", (1 - p * p) * sc),
            ("S2", "S5", oc),
            ("S2", "S6", sc),
        ]
        return StateDiagram(states[:6], states[2:6], tr, "S1")
    if t is Topology.SERIES_PARALLEL:
        # a shorted series switch needs no relay; an open one must be bypassed
        tr = [
            ("S1", "S2", 2 * p * oc),
            ("S1", "S2", 2 * sc),
            ("S1", "S3", 2 * (1 - p) * oc),
            ("S2", "S4", oc),
            ("S2", "S5", sc),
        ]
        return StateDiagram(states[:5], states[2:5], tr, "S1")
    if t is Topology.SERIES_STANDBY:
        p = c.p_series_standby
        tr = [
            ("S1", "S2", p * p * oc),
            ("S1", "S2", p * sc),
            ("S1", "S3", (1 - p * p) * oc),
            ("S1", "S4", (1 - p) * sc),
            ("S2", "S5", oc),
            ("S2", "S6", sc),
        ]
        return StateDiagram(states[:6], states[2:6], tr, "S1", note=_SSB_NOTE)
    return StateDiagram(["S1", "S2"], ["S2"], [("S1", "S2", r.lambda_sw)], "S1")


# -- closed forms -----------------------------------------------------------


def _positive(name, value):
    if not value > 0:
        raise InfiniteMTTFError(f"infinite MTTF: {name} is {value!r}")


def mttf_closed_form(t: Topology, r: SwitchRates, c: CoverageParams | None = None) -> float:
    """Closed-form MTTF of topology ``t`` in hours."""
    t = Topology(t)
    c = CoverageParams() if c is None else c
    oc, sc, oc_h, sc_h = r.lambda_oc, r.lambda_sc, r.lambda_oc_h, r.lambda_sc_h
    lam = oc + sc
    _positive("lambda_sw", lam)
    p = c.p_s
    if t is Topology.SHUNT_PARALLEL:
        lam_h = oc_h + sc_h
        _positive("lambda_sw_h", lam_h)
        return (lam + 2 * (oc_h + p * sc_h)) / (2 * lam * lam_h)
    if t is Topology.SHUNT_STANDBY:
        return (lam + p * oc + p * p * sc) / lam**2
    if t is Topology.SERIES_PARALLEL:
        return (lam + 2 * sc + 2 * p * oc) / (2 * lam**2)
    if t is Topology.SERIES_STANDBY:
        p = c.p_series_standby
        leave = p * p * oc + sc
        _positive("p^2 lambda_oc + lambda_sc", leave)
        return (lam + p * p * oc + p * sc) / (leave * lam)
    return 1.0 / lam


def perfect_coverage_mttf(t: Topology, lambda_sw, lambda_sw_h=None) -> float:
    """MTTF at full coverage, which depends only on the switch totals."""
    t = Topology(t)
    _positive("lambda_sw", lambda_sw)
    if t is Topology.SHUNT_PARALLEL:
        lambda_sw_h = lambda_sw if lambda_sw_h is None else lambda_sw_h
        _positive("lambda_sw_h", lambda_sw_h)
        return (lambda_sw + 2 * lambda_sw_h) / (2 * lambda_sw * lambda_sw_h)
    if t in (Topology.SHUNT_STANDBY, Topology.SERIES_STANDBY):
        return 2.0 / lambda_sw
    if t is Topology.SERIES_PARALLEL:
        return 3.0 / (2.0 * lambda_sw)
    return 1.0 / lambda_sw


def shunt_parallel_mttf_split(lambda_sw, lambda_sw_h, chi, p_shp):
    """Shunt-parallel MTTF written in terms of totals and short-circuit fraction."""
    _positive("lambda_sw", lambda_sw)
    _positive("lambda_sw_h", lambda_sw_h)
    return (lambda_sw + (2 + 2 * chi * (p_shp - 1)) * lambda_sw_h) / (
        2 * lambda_sw * lambda_sw_h
    )


def series_standby_mttf_split(lambda_sw, chi, p_ssb):
    """Series-standby MTTF written in terms of the total and short-circuit fraction."""
    _positive("lambda_sw", lambda_sw)
    p2 = p_ssb * p_ssb
    den = lambda_sw * (p2 + (1 - p2) * chi)
    _positive("p^2 + (1 - p^2) chi", den)
    return (1 + p2 + (p_ssb - p2) * chi) / den


# -- break-even conditions --------------------------------------------------


def perfect_coverage_winner(ratio) -> ComparisonVerdict:
    """Full coverage: shunt-parallel beats standby iff ``lambda_sw / lambda_sw_h > 2``."""
    if not ratio > 0:
        raise ReliabilityError(f"rate ratio must be > 0, got {ratio!r}")
    return _verdict(SHUNT_PARALLEL, ratio, 2.0, True, STANDBY, {"ratio": ratio})


def boundary_constants(a=DEFAULT_ACTIVATION_K):
    """``(C1, C2)`` of the linearised junction-temperature boundary ``T_j > C1 T_jH + C2``."""
    ln2k = math.log(2.0) * ZERO_CELSIUS_K
    den = a - ln2k
    if not den > 0:
        raise ReliabilityError(
            f"a={a!r} K must exceed 273*ln2 = {ln2k:.4f} K for the boundary to exist"
        )
    c1 = (a + ln2k) / den
    c2 = math.log(2.0) * ZERO_CELSIUS_K**2 / den
    return c1, c2


def temperature_boundary(t_j_h, a=DEFAULT_ACTIVATION_K, exact=False) -> float:
    """Full-load junction temperature above which shunt-parallel wins, degC.

    By default the linearised form ``C1 * t_j_h + C2`` is returned. With
    ``exact=True`` the threshold is where the full-load rate is exactly twice
    the half-load rate; ``inf`` when no finite temperature achieves that.
    """
    if not t_j_h > -ZERO_CELSIUS_K:
        raise ReliabilityError(f"t_j_h={t_j_h!r} degC is at or below absolute zero (-273)")
    if exact:
        if not a > 0:
            raise ReliabilityError(f"a must be > 0, got {a!r}")
        inv = 1.0 / (t_j_h + ZERO_CELSIUS_K) - math.log(2.0) / a
        return math.inf if inv <= 0 else 1.0 / inv - ZERO_CELSIUS_K
    c1, c2 = boundary_constants(a)
    return c1 * t_j_h + c2


def region_verdict(t_j, t_j_h, a=DEFAULT_ACTIVATION_K, exact=False) -> ComparisonVerdict:
    """Classify a full-load / half-load junction temperature pair (full coverage)."""
    threshold = temperature_boundary(t_j_h, a, exact=exact)
    return _verdict(
        SHUNT_PARALLEL, t_j, threshold, True, STANDBY, {"t_j": t_j, "t_j_h": t_j_h, "a": a}
    )


def imperfect_coverage_threshold(c: CoverageParams, full=True) -> float:
    """Largest half/full-load rate ratio for which shunt-parallel beats series-standby.

    ``full=False`` drops the small ``(chi - chi^2) p_ssb^2 (1 - p_shp)`` term
    from the denominator.
    """
    chi, p1 = c.chi, c.p_s
    p2 = c.p_series_standby
    num = 0.5 * (chi + (1 - chi) * p2 * p2)
    den = (1 - chi + chi * chi) + chi * p2 - chi * chi * p1
    if full:
        den += (chi - chi * chi) * p2 * p2 * (1 - p1)
    if not den > 0:
        raise ReliabilityError(f"threshold denominator is {den!r}; no break-even ratio exists")
    return num / den


def imperfect_coverage_winner(ratio_h, c: CoverageParams, full=True) -> ComparisonVerdict:
    """Compare shunt-parallel with series-standby given ``lambda_sw_h / lambda_sw``."""
    threshold = imperfect_coverage_threshold(c, full=full)
    return _verdict(
        SHUNT_PARALLEL,
        ratio_h,
        threshold,
        False,
        SERIES_STANDBY,
        {"ratio_h": ratio_h, "p_s": c.p_s, "gamma": c.gamma, "chi": c.chi, "full": full},
    )


def heatsink_condition(p_loss, p_loss_h, stack: ThermalStack, a=DEFAULT_ACTIVATION_K):
    """Full-coverage verdict expressed through losses, ambient and thermal resistance.

    Shunt-parallel wins iff ``p_loss - C1 p_loss_h > ((C1 - 1) T_a + C2) / R``
    with ``R`` the junction-to-ambient resistance.
    """
    r = stack.r_total
    if not r > 0:
        raise ReliabilityError("total thermal resistance is zero")
    c1, c2 = boundary_constants(a)
    lhs = p_loss - c1 * p_loss_h
    rhs = ((c1 - 1) * stack.t_a + c2) / r
    return _verdict(
        SHUNT_PARALLEL,
        lhs,
        rhs,
        True,
        STANDBY,
        {"p_loss": p_loss, "p_loss_h": p_loss_h, "t_a": stack.t_a, "r_total": r, "a": a},
    )


# -- sensitivity sweep ------------------------------------------------------

SWEEP_PARAMETERS = ("t_a", "p_loss_scale", "r_ca")


@dataclass(frozen=True)
class SweepRow:
    param: str
    value: float
    t_j: float
    t_j_h: float
    mttf: dict
    winner: str


def _apply(base, parameter, value):
    stack = base.stack()
    if parameter == "t_a":
        return dataclasses.replace(base, t_a_c=value)
    if parameter == "p_loss_scale":
        full, half = base.full_load_loss(), base.half_load_loss()
        return dataclasses.replace(base, p_loss_w=full * value, p_loss_half_w=half * value)
    if parameter == "r_ca":
        r_ha = value - stack.r_ch
        if r_ha < 0:
            raise ReliabilityError(f"r_ca={value!r} is below r_ch={stack.r_ch!r}")
        return dataclasses.replace(base, r_ha=r_ha)
    raise ReliabilityError(f"unknown sweep parameter {parameter!r}; use one of {SWEEP_PARAMETERS}")


def _evaluate(scn, parameter, value, full):
    t_j, t_j_h = scn.junction_temperatures()
    rates = scn.switch_rates()
    cov = scn.coverage()
    mttfs = {t: mttf_closed_form(t, rates, cov) for t in REDUNDANT}
    if cov.p_s == 1.0 and cov.gamma == 1.0:
        verdict = perfect_coverage_winner(rates.lambda_sw / rates.lambda_sw_h)
    else:
        verdict = imperfect_coverage_winner(rates.lambda_sw_h / rates.lambda_sw, cov, full)
    return SweepRow(parameter, float(value), t_j, t_j_h, mttfs, verdict.winner)


def sensitivity_sweep(base, parameter, grid, full=True):
    """Re-evaluate MTTFs and the winning arrangement across ``grid``.

    ``base`` is a :class:`~fclrel.scenario.Scenario`. ``parameter`` is one of
    ``t_a`` (ambient degC), ``p_loss_scale`` (multiplier on both losses) or
    ``r_ca`` (case-to-ambient resistance, degC/W). Rows come back sorted by
    the parameter value.
    """
    grid = [float(v) for v in grid]
    if not grid:
        raise ReliabilityError("sweep grid is empty")
    steps = [b - a for a, b in zip(grid, grid[1:])]
    if not (all(s >= 0 for s in steps) or all(s <= 0 for s in steps)):
        raise ReliabilityError("sweep grid must be monotone")
    if parameter not in SWEEP_PARAMETERS:
        raise ReliabilityError(
            f"unknown sweep parameter {parameter!r}; use one of {SWEEP_PARAMETERS}"
        )
    rows = []
    for k, value in enumerate(grid):
        try:
            rows.append(_evaluate(_apply(base, parameter, value), parameter, value, full))
        except ReliabilityError as exc:
            raise type(exc)(f"grid point {k} ({parameter}={value!r}): {exc}") from exc
    return sorted(rows, key=lambda row: row.value)
