"""Levelized cost of a fault current limiter over one expected lifetime.

Lifetime cost is investment + loss energy + one repair + one outage, spread
over ``MTTF + MTTR``. Costs are in dollars, MTTF in hours, MTTR in days, and
the levelized cost is reported per million hours.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import ReliabilityError
from .topologies import Topology, mttf_closed_form
from .units import HOURS_PER_DAY, HOURS_PER_MILLION

__all__ = [
    "THYRISTORS_PER_SWITCH",
    "CostParams",
    "CostBill",
    "investment_cost",
    "levelized_cost",
    "configuration_loss",
    "rank_configurations",
]

# a bidirectional switch is an anti-parallel thyristor pair
THYRISTORS_PER_SWITCH = 2


@dataclass(frozen=True)
class CostParams:
    """Cost coefficients.

    c0 : $/kA of rating per switch
    i_rating : kA
    x_switches : bidirectional switches installed
    c_l0 : $/kWh of loss energy
    c_lt : labour and transport, $/day of repair (quoted per kA/day, applied as written)
    c_d0 : outage cost, $/day
    mttr : days
    """

    c0: float
    i_rating: float
    x_switches: int
    c_l0: float
    c_lt: float
    c_d0: float
    mttr: float

    def __post_init__(self):
        for name in ("c0", "i_rating", "c_l0", "c_lt", "c_d0", "mttr"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ReliabilityError(f"{name} must be finite and >= 0, got {v!r}")
        if int(self.x_switches) != self.x_switches or self.x_switches < 1:
            raise ReliabilityError(f"x_switches must be an integer >= 1, got {self.x_switches!r}")

    @property
    def mttr_hours(self):
        return self.mttr * HOURS_PER_DAY


@dataclass(frozen=True)
class CostBill:
    c_inst: float
    c_loss: float
    c_repair: float
    c_outage: float
    mttf: float
    mttr_h: float
    lc: float

    @property
    def total(self):
        return self.c_inst + self.c_loss + self.c_repair + self.c_outage


def investment_cost(p: CostParams) -> float:
    return p.x_switches * p.c0 * p.i_rating


def levelized_cost(p: CostParams, mttf, p_loss_total) -> CostBill:
    """Cost bill for one lifetime of ``mttf`` hours at ``p_loss_total`` watts.

    >>> p = CostParams(710, 0.05, 2, 12, 300, 1200, 0)
    >>> bill = levelized_cost(p, 1e6, 0.0)
    >>> round(bill.lc, 6)
    142.0
    """
    if not mttf > 0:
        raise ReliabilityError(f"mttf must be > 0 hours, got {mttf!r}")
    if p_loss_total < 0:
        raise ReliabilityError(f"loss power must be >= 0 W, got {p_loss_total!r}")
    life = mttf + p.mttr_hours
    if not life > 0:
        raise ReliabilityError("mttf + mttr must be > 0")
    c_inst = investment_cost(p)
    c_loss = p_loss_total * mttf / 1000.0 * p.c_l0
    c_repair = c_inst + p.c_lt * p.mttr
    c_outage = p.c_d0 * p.mttr
    total = c_inst + c_loss + c_repair + c_outage
    return CostBill(c_inst, c_loss, c_repair, c_outage, mttf, p.mttr_hours, total / life * HOURS_PER_MILLION)


def configuration_loss(topology, p_loss, p_loss_h) -> float:
    """Total device loss of a configuration in W from per-thyristor losses.

    Shunt-parallel switches share the current (half-load loss on both); the
    series-parallel pair both carry full current; standby and non-redundant
    arrangements have one switch conducting at full load.
    """
    t = Topology(topology)
    if t is Topology.SHUNT_PARALLEL:
        return 2 * THYRISTORS_PER_SWITCH * p_loss_h
    if t is Topology.SERIES_PARALLEL:
        return 2 * THYRISTORS_PER_SWITCH * p_loss
    return THYRISTORS_PER_SWITCH * p_loss


def rank_configurations(scenario):
    """Evaluate every configuration end to end and sort by levelized cost.

    Returns a list of ``(Topology, CostBill)`` pairs, cheapest first. Ties keep
    the enumeration order of :class:`Topology`.
    """
    rates = scenario.switch_rates()
    cov = scenario.coverage()
    p_full, p_half = scenario.full_load_loss(), scenario.half_load_loss()
    out = []
    for t in Topology:
        mttf = mttf_closed_form(t, rates, cov)
        bill = levelized_cost(scenario.cost_params(t), mttf, configuration_loss(t, p_full, p_half))
        out.append((t, bill))
    return sorted(out, key=lambda item: item[1].lc)
