"""Steady-state device losses and junction temperatures.

Losses follow the usual switching + conduction split::

    P_loss = f_sw (E_on + E_off) + (1/T) * sum_k (V0 + R_s i_k) i_k Ts_k

and the junction sits ``P_loss * (R_jc + R_ca)`` above ambient, where the
case-to-ambient path is the case-to-heatsink and heatsink-to-ambient
resistances in series. Thermal capacitances are ignored; every result is a
DC operating point.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import ReliabilityError

__all__ = [
    "ThermalStack",
    "LossSpec",
    "power_loss",
    "junction_temperature",
    "junction_from_case",
    "read_waveform_csv",
    "write_waveform_csv",
    "samples_from_times",
    "thyristor_current_samples",
]


@dataclass(frozen=True)
class ThermalStack:
    """Ambient temperature (degC) and series thermal resistances (degC/W)."""

    t_a: float
    r_jc: float
    r_ch: float = 0.0
    r_ha: float = 0.0

    def __post_init__(self):
        for name in ("r_jc", "r_ch", "r_ha"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ReliabilityError(f"{name} must be finite and >= 0, got {v!r}")
        if not math.isfinite(self.t_a):
            raise ReliabilityError(f"t_a must be finite, got {self.t_a!r}")

    @property
    def r_ca(self):
        return self.r_ch + self.r_ha

    @property
    def r_total(self):
        return self.r_jc + self.r_ca

    def replace(self, **changes):
        fields = dict(t_a=self.t_a, r_jc=self.r_jc, r_ch=self.r_ch, r_ha=self.r_ha)
        fields.update(changes)
        return ThermalStack(**fields)


@dataclass(frozen=True)
class LossSpec:
    """Device loss parameters plus one averaging period of current samples.

    ``current_samples`` holds ``(current_A, sampling_period_s)`` pairs; the
    averaging period is the sum of the sampling periods.
    """

    current_samples: tuple
    f_sw: float = 0.0
    e_on: float = 0.0
    e_off: float = 0.0
    v_0: float = 0.0
    r_s: float = 0.0

    def __post_init__(self):
        samples = tuple((float(i), float(ts)) for i, ts in self.current_samples)
        object.__setattr__(self, "current_samples", samples)
        if not samples:
            raise ReliabilityError("current waveform has no samples")
        for k, (_, ts) in enumerate(samples):
            if not ts > 0:
                raise ReliabilityError(f"sample {k}: sampling period {ts!r} must be > 0")
        for name in ("f_sw", "e_on", "e_off", "v_0", "r_s"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ReliabilityError(f"{name} must be finite and >= 0, got {v!r}")

    @property
    def period(self):
        return math.fsum(ts for _, ts in self.current_samples)


def power_loss(spec: LossSpec) -> float:
    """Average device loss in watts over the sampled period."""
    arr = np.asarray(spec.current_samples)
    i, ts = arr[:, 0], arr[:, 1]
    switching = spec.f_sw * (spec.e_on + spec.e_off)
    e_cond = (spec.v_0 + spec.r_s * i) * i * ts
    return switching + math.fsum(e_cond) / spec.period


def junction_temperature(stack: ThermalStack, p_loss) -> float:
    """Junction temperature (degC) reached from ambient through the full stack."""
    return stack.t_a + p_loss * (stack.r_jc + stack.r_ca)


def junction_from_case(t_case, p_loss, r_jc) -> float:
    """Junction temperature (degC) from a measured case temperature."""
    return t_case + p_loss * r_jc


def samples_from_times(times, currents):
    """Turn a sampled waveform into ``(current, Ts)`` pairs.

    Each sample is held until the next time stamp; the last one is held for
    the preceding step, so ``N`` uniform samples at ``k*dt`` cover ``N*dt``.
    """
    t = np.asarray(times, dtype=float)
    i = np.asarray(currents, dtype=float)
    if t.ndim != 1 or t.shape != i.shape:
        raise ReliabilityError("time and current columns must be 1-D and equal length")
    if t.size < 2:
        raise ReliabilityError("waveform needs at least two samples")
    dt = np.diff(t)
    if np.any(dt <= 0):
        k = int(np.argmax(dt <= 0)) + 1
        raise ReliabilityError(f"time column is not strictly increasing at row {k}")
    ts = np.append(dt, dt[-1])
    return tuple(zip(i.tolist(), ts.tolist()))


def read_waveform_csv(path):
    """Read a ``t_s,i_a`` CSV into ``(current, Ts)`` pairs."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["t_s", "i_a"]:
            raise ReliabilityError(f"{path}: header must be 't_s,i_a', got {reader.fieldnames}")
        times, currents = [], []
        for row_no, row in enumerate(reader, start=2):
            try:
                times.append(float(row["t_s"]))
                currents.append(float(row["i_a"]))
            except (TypeError, ValueError):
                raise ReliabilityError(f"{path}: line {row_no} is not numeric") from None
    return samples_from_times(times, currents)


def write_waveform_csv(path, times, currents):
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t_s", "i_a"])
        for t, i in zip(times, currents):
            w.writerow([repr(float(t)), repr(float(i))])


def thyristor_current_samples(v_rms, p_load, freq=50.0, n=400, share=1.0):
    """Current through one thyristor of an anti-parallel pair feeding a resistive load.

    The thyristor conducts the positive half-cycle of the load current;
    ``share`` is the fraction of that current it carries (0.5 when two
    switches are paralleled). Returns ``(times, currents)`` over one period.
    """
    if n < 2 or n % 2:
        raise ReliabilityError("n must be an even number >= 2")
    i_peak = math.sqrt(2.0) * p_load / v_rms
    t = np.arange(n) / (n * freq)
    i = share * i_peak * np.sin(2 * np.pi * freq * t)
    return t, np.clip(i, 0.0, None)
