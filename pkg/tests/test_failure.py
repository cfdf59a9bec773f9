import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fclrel.exceptions import ReliabilityError
from fclrel.failure import (
    CoverageParams,
    PartStressParams,
    SwitchRates,
    bidirectional_rate,
    rate_ratio_from_temps,
    split_rates,
    switch_rates,
    temperature_factor,
    unidirectional_rate,
)

# 40-digit mpmath evaluations, rounded to double
PI_T_100C = 8.000846069251562
RATIO_106_20_44_90 = 0.20862112510926189


def test_reference_temperature_gives_unity():
    assert temperature_factor(25.0) == pytest.approx(1.0, abs=1e-15)


def test_temperature_factor_frozen():
    assert temperature_factor(100.0) == pytest.approx(PI_T_100C, rel=1e-14)


def test_bidirectional_is_twice_unidirectional():
    p = PartStressParams(10.0, 8.0, 6.0)
    assert bidirectional_rate(p, 100.0) == pytest.approx(2 * 480 * PI_T_100C, rel=1e-14)
    assert bidirectional_rate(p, 60.0) == 2 * unidirectional_rate(p, 60.0)


def test_extra_factors_multiply():
    p = PartStressParams(1.0, extra_pi={"pi_s": 2.0, "pi_r": 3.0})
    assert p.stress_product == 6.0


@pytest.mark.parametrize("field", ["lambda_b", "pi_q", "pi_e", "a"])
def test_invalid_stress_params(field):
    kw = dict(lambda_b=1.0)
    kw[field] = -1.0
    with pytest.raises(ReliabilityError, match=field):
        PartStressParams(**kw)


def test_absolute_zero_rejected():
    with pytest.raises(ReliabilityError, match="absolute zero"):
        temperature_factor(-273.0)


def test_rate_ratio_frozen():
    assert rate_ratio_from_temps(106.20, 44.90) == pytest.approx(RATIO_106_20_44_90, rel=1e-13)


@given(st.floats(-50, 200), st.floats(-50, 200))
def test_rate_ratio_is_factor_quotient(tj, tjh):
    expected = temperature_factor(tjh) / temperature_factor(tj)
    assert rate_ratio_from_temps(tj, tjh) == pytest.approx(expected, rel=1e-12)


@given(st.floats(0, 1e-3), st.floats(0, 1))
def test_split_preserves_total(lam, chi):
    sc, oc = split_rates(lam, chi)
    assert sc + oc == pytest.approx(lam, rel=2.3e-16, abs=0)
    assert sc >= 0 and oc >= 0


def test_split_rejects_bad_chi():
    with pytest.raises(ReliabilityError, match="chi"):
        split_rates(1e-6, 1.2)


def test_switch_rates_per_hour():
    p = PartStressParams(10.0, 8.0, 6.0)
    r = switch_rates(p, 100.0, 25.0, chi=0.98)
    assert r.lambda_sw == pytest.approx(2 * 480 * PI_T_100C * 1e-9, rel=1e-13)
    assert r.lambda_sw_h == pytest.approx(960e-9, rel=1e-13)
    assert r.lambda_sc == pytest.approx(0.98 * r.lambda_sw, rel=1e-15)


def test_switch_rates_scaled():
    r = SwitchRates.from_totals(2e-6, 1e-6).scaled(3)
    assert r.lambda_sw == pytest.approx(6e-6)
    assert r.lambda_sw_h == pytest.approx(3e-6)


def test_negative_switch_rate_rejected():
    with pytest.raises(ReliabilityError, match="lambda_oc"):
        SwitchRates(-1.0, 0, 0, 0)


def test_coverage_bounds_and_series_standby_product():
    assert CoverageParams(0.9, 0.5).p_series_standby == pytest.approx(0.45)
    with pytest.raises(ReliabilityError, match="gamma"):
        CoverageParams(1.0, 1.5)


def test_unidirectional_rate_monotone_in_temperature():
    p = PartStressParams(10.0)
    temps = [0.0, 25.0, 50.0, 100.0, 150.0]
    rates = [unidirectional_rate(p, t) for t in temps]
    assert all(a < b for a, b in zip(rates, rates[1:]))
    assert not math.isnan(rates[-1])
