import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathlib import Path

from fclrel.exceptions import ReliabilityError
from fclrel.scenario import load_scenario
from fclrel.thermal import (
    LossSpec,
    ThermalStack,
    junction_from_case,
    junction_temperature,
    power_loss,
    read_waveform_csv,
    samples_from_times,
    thyristor_current_samples,
    write_waveform_csv,
)


def test_stack_totals():
    s = ThermalStack(25.0, 1.3, 0.2, 58.5)
    assert s.r_ca == pytest.approx(58.7)
    assert s.r_total == pytest.approx(60.0)
    assert junction_temperature(s, 1.0) == pytest.approx(85.0)
    assert s.replace(t_a=30.0).t_a == 30.0


def test_negative_resistance_rejected():
    with pytest.raises(ReliabilityError, match="r_ha"):
        ThermalStack(25.0, 1.0, 0.0, -1.0)


def test_junction_from_case_frozen():
    assert junction_from_case(44.46, 0.335, 1.3) == pytest.approx(44.8955, abs=1e-12)
    assert junction_from_case(104.46, 1.34, 1.3) == pytest.approx(106.202, abs=1e-12)


def test_dc_current_conduction_loss():
    spec = LossSpec([(10.0, 0.5), (10.0, 0.5)], v_0=1.0, r_s=0.01)
    assert power_loss(spec) == pytest.approx(10 * 1.0 + 0.01 * 100)


def test_switching_loss_term():
    spec = LossSpec([(0.0, 1.0)], f_sw=100.0, e_on=1e-3, e_off=2e-3)
    assert power_loss(spec) == pytest.approx(0.3)


def test_unequal_sample_periods_weighted():
    spec = LossSpec([(1.0, 3.0), (0.0, 1.0)], r_s=1.0)
    assert power_loss(spec) == pytest.approx(0.75)


def test_bad_samples():
    with pytest.raises(ReliabilityError, match="no samples"):
        LossSpec([])
    with pytest.raises(ReliabilityError, match="sample 1"):
        LossSpec([(1.0, 1.0), (1.0, 0.0)])


def test_times_must_increase():
    with pytest.raises(ReliabilityError, match="row 2"):
        samples_from_times([0.0, 1.0, 1.0], [1, 2, 3])


def _smooth_loss(n):
    # 2 + sin over one period, sampled uniformly
    t = np.arange(n) / n
    i = 2.0 + np.sin(2 * np.pi * t)
    return power_loss(LossSpec(samples_from_times(t, i), v_0=0.8, r_s=0.05))


def test_loss_converges_under_resampling():
    # exact: v0*2 + rs*(4 + 1/2)
    exact = 0.8 * 2 + 0.05 * 4.5
    for n in (16, 64, 512):
        assert _smooth_loss(n) == pytest.approx(exact, rel=1e-12)
    assert _smooth_loss(4096) == pytest.approx(_smooth_loss(40), rel=1e-12)


@given(st.integers(1, 50))
def test_loss_invariant_to_time_scale(k):
    t, i = thyristor_current_samples(230.0, 100.0, n=40)
    base = power_loss(LossSpec(samples_from_times(t, i), r_s=0.2))
    scaled = power_loss(LossSpec(samples_from_times(t * k, i), r_s=0.2))
    assert scaled == pytest.approx(base, rel=1e-12)


def test_csv_round_trip(tmp_path):
    t, i = thyristor_current_samples(230.0, 100.0, n=20)
    path = tmp_path / "w.csv"
    write_waveform_csv(path, t, i)
    samples = read_waveform_csv(path)
    assert [s[0] for s in samples] == i.tolist()


def test_csv_bad_header(tmp_path):
    path = tmp_path / "w.csv"
    path.write_text("time,current\n0,1\n1,2\n")
    with pytest.raises(ReliabilityError, match="header"):
        read_waveform_csv(path)


def test_csv_non_numeric(tmp_path):
    path = tmp_path / "w.csv"
    path.write_text("t_s,i_a\n0,1\n1,x\n")
    with pytest.raises(ReliabilityError, match="line 3"):
        read_waveform_csv(path)


def test_half_wave_samples():
    t, i = thyristor_current_samples(230.0, 230.0, n=400)
    assert i.max() == pytest.approx(math.sqrt(2), rel=1e-4)
    assert np.all(i[201:] == 0.0)
    with pytest.raises(ReliabilityError):
        thyristor_current_samples(230.0, 1.0, n=3)


def test_bundled_waveforms_reproduce_prototype_losses():
    scn = load_scenario("paper_repro")
    full = power_loss(LossSpec(read_waveform_csv(Path(scn.base_dir) / scn.waveform_full), v_0=scn.v0_v, r_s=scn.r_s_ohm))
    half = power_loss(LossSpec(read_waveform_csv(Path(scn.base_dir) / scn.waveform_half), v_0=scn.v0_v, r_s=scn.r_s_ohm))
    assert full == pytest.approx(1.34, abs=0.005)
    assert half == pytest.approx(0.335, abs=0.0005)
