import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fclrel.cost import (
    CostParams,
    configuration_loss,
    investment_cost,
    levelized_cost,
    rank_configurations,
)
from fclrel.exceptions import ReliabilityError
from fclrel.scenario import load_scenario
from fclrel.topologies import Topology

# pinned outputs for the bundled prototype scenario
RANKED_LC = {
    Topology.SHUNT_PARALLEL: 109389,
    Topology.SHUNT_STANDBY: 187863,
    Topology.SERIES_STANDBY: 187863,
    Topology.SERIES_PARALLEL: 271646,
    Topology.NON_REDUNDANT: 342184,
}


def params(**kw):
    base = dict(c0=710, i_rating=0.05, x_switches=2, c_l0=12, c_lt=300, c_d0=1200, mttr=24)
    base.update(kw)
    return CostParams(**base)


def test_components_by_hand():
    p = params()
    bill = levelized_cost(p, 1e5, 2.0)
    assert bill.c_inst == pytest.approx(71.0)
    assert bill.c_loss == pytest.approx(2.0 * 1e5 / 1000 * 12)
    assert bill.c_repair == pytest.approx(71.0 + 300 * 24)
    assert bill.c_outage == pytest.approx(1200 * 24)
    assert bill.mttr_h == 576
    assert bill.lc == pytest.approx(bill.total / (1e5 + 576) * 1e6, rel=1e-15)


def test_investment_scales_with_switch_count():
    assert investment_cost(params(x_switches=1)) * 2 == investment_cost(params())


@given(st.floats(1e3, 1e8), st.floats(0, 10))
def test_longer_life_never_costs_more_without_losses(m, k):
    p = params()
    assert levelized_cost(p, m * (1 + k), 0.0).lc <= levelized_cost(p, m, 0.0).lc


@pytest.mark.parametrize("bad", [dict(c0=-1), dict(mttr=float("nan")), dict(x_switches=0), dict(x_switches=1.5)])
def test_invalid_params(bad):
    with pytest.raises(ReliabilityError):
        params(**bad)


def test_invalid_mttf_and_loss():
    with pytest.raises(ReliabilityError, match="mttf"):
        levelized_cost(params(), 0.0, 1.0)
    with pytest.raises(ReliabilityError, match="loss"):
        levelized_cost(params(), 1.0, -1.0)


def test_configuration_loss_counts():
    assert configuration_loss("shunt_parallel", 1.0, 0.25) == 1.0
    assert configuration_loss("series_parallel", 1.0, 0.25) == 4.0
    for t in ("shunt_standby", "series_standby", "non_redundant"):
        assert configuration_loss(t, 1.0, 0.25) == 2.0


def test_prototype_ranking_pinned():
    ranked = rank_configurations(load_scenario("paper_repro"))
    assert [t for t, _ in ranked] == list(RANKED_LC)
    for t, bill in ranked:
        assert bill.lc == pytest.approx(RANKED_LC[t], abs=1)


def test_standby_pair_tie_keeps_enumeration_order():
    ranked = dict(rank_configurations(load_scenario("paper_repro")))
    assert ranked[Topology.SHUNT_STANDBY].lc == pytest.approx(ranked[Topology.SERIES_STANDBY].lc, rel=1e-12)


def test_cheaper_energy_lowers_every_lc():
    scn = load_scenario("paper_repro")
    cheap = dataclasses.replace(scn, c_l0_per_kwh=0.12)
    a, b = dict(rank_configurations(scn)), dict(rank_configurations(cheap))
    assert all(b[t].lc < a[t].lc for t in Topology)
