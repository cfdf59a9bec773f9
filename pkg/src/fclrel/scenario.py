"""Flat ``key = value`` scenario files.

A scenario bundles everything one analysis needs: topology and coverage,
the thermal stack, per-device losses (given directly or as waveforms), the
part-stress factors and the cost coefficients. Lines starting with ``#`` are
comments; unknown keys are rejected. See ``data/paper_repro.scn`` for the
bundled parameter set.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .cost import CostParams
from .exceptions import ScenarioError
from .failure import (
    DEFAULT_ACTIVATION_K,
    THYRISTOR_SHORT_FRACTION,
    CoverageParams,
    PartStressParams,
    switch_rates,
)
from .thermal import LossSpec, ThermalStack, junction_temperature, power_loss, read_waveform_csv
from .topologies import Topology

__all__ = ["Scenario", "parse_scenario", "load_scenario", "bundled_scenarios", "SCENARIO_KEYS"]

# key -> accepted range: prob [0, 1], nonneg >= 0, pos > 0, temp > -273
_NUMERIC = {
    "p_s": "prob",
    "gamma": "prob",
    "chi": "prob",
    "t_a_c": "temp",
    "r_jc": "nonneg",
    "r_ch": "nonneg",
    "r_ha": "nonneg",
    "p_loss_w": "nonneg",
    "p_loss_half_w": "nonneg",
    "a": "pos",
    "lambda_b_fit": "pos",
    "pi_q": "pos",
    "pi_e": "pos",
    "pi_extra": "pos",
    "f_sw_hz": "nonneg",
    "e_on_j": "nonneg",
    "e_off_j": "nonneg",
    "v0_v": "nonneg",
    "r_s_ohm": "nonneg",
    "c0_per_ka": "nonneg",
    "i_rating_ka": "nonneg",
    "c_l0_per_kwh": "nonneg",
    "c_lt_per_ka_day": "nonneg",
    "c_d0_per_day": "nonneg",
    "mttr_days": "nonneg",
    "l_m_h": "nonneg",
}
_TEXT = ("topology", "waveform_full", "waveform_half")
SCENARIO_KEYS = tuple(_TEXT) + tuple(_NUMERIC)


@dataclass(frozen=True)
class Scenario:
    """Parsed scenario. Missing optional values are ``None``."""

    topology: str | None = None
    p_s: float = 1.0
    gamma: float = 1.0
    chi: float = THYRISTOR_SHORT_FRACTION
    t_a_c: float | None = None
    r_jc: float | None = None
    r_ch: float = 0.0
    r_ha: float | None = None
    p_loss_w: float | None = None
    p_loss_half_w: float | None = None
    a: float = DEFAULT_ACTIVATION_K
    lambda_b_fit: float | None = None
    pi_q: float = 1.0
    pi_e: float = 1.0
    pi_extra: float = 1.0
    f_sw_hz: float = 0.0
    e_on_j: float = 0.0
    e_off_j: float = 0.0
    v0_v: float = 0.0
    r_s_ohm: float = 0.0
    waveform_full: str | None = None
    waveform_half: str | None = None
    c0_per_ka: float | None = None
    i_rating_ka: float | None = None
    c_l0_per_kwh: float | None = None
    c_lt_per_ka_day: float | None = None
    c_d0_per_day: float | None = None
    mttr_days: float | None = None
    l_m_h: float | None = None  # recorded for completeness, not used
    base_dir: str = dataclasses.field(default=".", compare=False)

    def require(self, *keys):
        for key in keys:
            if getattr(self, key) is None:
                raise ScenarioError(f"scenario is missing required key {key!r}", key)

    def get_topology(self, override=None):
        name = override if override is not None else self.topology
        if name is None:
            raise ScenarioError("no topology given (scenario key 'topology' or --topology)", "topology")
        try:
            return Topology(name)
        except ValueError:
            choices = ", ".join(t.value for t in Topology)
            raise ScenarioError(f"unknown topology {name!r}; choose from {choices}", "topology") from None

    def coverage(self):
        return CoverageParams(self.p_s, self.gamma, self.chi)

    def stack(self):
        self.require("t_a_c", "r_jc", "r_ha")
        return ThermalStack(self.t_a_c, self.r_jc, self.r_ch, self.r_ha)

    def part_params(self):
        self.require("lambda_b_fit")
        extra = {} if self.pi_extra == 1.0 else {"pi_extra": self.pi_extra}
        return PartStressParams(self.lambda_b_fit, self.pi_q, self.pi_e, extra, self.a)

    def _waveform_loss(self, which):
        path = getattr(self, which)
        if path is None:
            return None
        p = Path(path)
        if not p.is_absolute():
            p = Path(self.base_dir) / p
        spec = LossSpec(
            read_waveform_csv(p), self.f_sw_hz, self.e_on_j, self.e_off_j, self.v0_v, self.r_s_ohm
        )
        return power_loss(spec)

    def full_load_loss(self):
        """Per-device loss at full load, W (explicit value wins over the waveform)."""
        if self.p_loss_w is not None:
            return self.p_loss_w
        loss = self._waveform_loss("waveform_full")
        if loss is None:
            raise ScenarioError("scenario needs 'p_loss_w' or 'waveform_full'", "p_loss_w")
        return loss

    def half_load_loss(self):
        if self.p_loss_half_w is not None:
            return self.p_loss_half_w
        loss = self._waveform_loss("waveform_half")
        if loss is None:
            raise ScenarioError("scenario needs 'p_loss_half_w' or 'waveform_half'", "p_loss_half_w")
        return loss

    def junction_temperatures(self):
        """``(t_j, t_j_h)`` at full and half load through the same stack."""
        stack = self.stack()
        return (
            junction_temperature(stack, self.full_load_loss()),
            junction_temperature(stack, self.half_load_loss()),
        )

    def switch_rates(self):
        t_j, t_j_h = self.junction_temperatures()
        return switch_rates(self.part_params(), t_j, t_j_h, self.chi)

    def cost_params(self, topology):
        self.require(
            "c0_per_ka", "i_rating_ka", "c_l0_per_kwh", "c_lt_per_ka_day", "c_d0_per_day", "mttr_days"
        )
        return CostParams(
            c0=self.c0_per_ka,
            i_rating=self.i_rating_ka,
            x_switches=Topology(topology).switches,
            c_l0=self.c_l0_per_kwh,
            c_lt=self.c_lt_per_ka_day,
            c_d0=self.c_d0_per_day,
            mttr=self.mttr_days,
        )


def _check_value(key, value):
    rule = _NUMERIC[key]
    if not math.isfinite(value):
        raise ScenarioError(f"{key} must be finite, got {value!r}", key)
    if rule == "prob" and not 0.0 <= value <= 1.0:
        raise ScenarioError(f"{key} must lie in [0, 1], got {value!r}", key)
    if rule == "nonneg" and value < 0:
        raise ScenarioError(f"{key} must be >= 0, got {value!r}", key)
    if rule == "pos" and not value > 0:
        raise ScenarioError(f"{key} must be > 0, got {value!r}", key)
    if rule == "temp" and not value > -273.0:
        raise ScenarioError(f"{key} must be above -273 degC, got {value!r}", key)


def parse_scenario(text, base_dir="."):
    """Parse scenario text into a :class:`Scenario`.

    Raises
    ------
    ScenarioError
        On syntax errors, unknown or repeated keys and out-of-range values; the
        exception's ``key`` attribute names the key.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ScenarioError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        if key not in SCENARIO_KEYS:
            raise ScenarioError(f"line {lineno}: unknown key {key!r}", key)
        if key in values:
            raise ScenarioError(f"line {lineno}: key {key!r} given twice", key)
        if key in _NUMERIC:
            try:
                num = float(value)
            except ValueError:
                raise ScenarioError(f"line {lineno}: {key} = {value!r} is not a number", key) from None
            _check_value(key, num)
            values[key] = num
        else:
            values[key] = value
    scn = Scenario(base_dir=str(base_dir), **values)
    if scn.topology is not None:
        scn.get_topology()
    return scn


def bundled_scenarios():
    root = resources.files("fclrel") / "data"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".scn"))


def load_scenario(path):
    """Load a scenario file; bundled names such as ``paper_repro`` also resolve."""
    p = Path(path)
    if p.is_file():
        return parse_scenario(p.read_text(), base_dir=p.parent)
    name = p.name if p.suffix == ".scn" else p.name + ".scn"
    res = resources.files("fclrel") / "data" / name
    if res.is_file():
        with resources.as_file(res) as real:
            return parse_scenario(real.read_text(), base_dir=real.parent)
    raise ScenarioError(f"scenario file {str(path)!r} not found")
