import csv
import io

import pytest

from fclrel import cli
from fclrel.exceptions import ScenarioError
from fclrel.scenario import SCENARIO_KEYS, bundled_scenarios, load_scenario, parse_scenario

MINIMAL = """
topology = series_parallel
t_a_c = 25
r_jc = 1.3
r_ha = 58.7
p_loss_w = 1.34
p_loss_half_w = 0.335
lambda_b_fit = 10
"""


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class TestScenario:
    def test_bundled(self):
        assert "paper_repro.scn" in bundled_scenarios()
        scn = load_scenario("paper_repro")
        assert scn.get_topology().value == "shunt_parallel"
        t_j, t_j_h = scn.junction_temperatures()
        assert t_j == pytest.approx(105.4)
        assert t_j_h == pytest.approx(45.1)

    def test_minimal_defaults(self):
        scn = parse_scenario(MINIMAL)
        assert scn.p_s == 1.0 and scn.chi == 0.98 and scn.a == 3082
        assert scn.switch_rates().lambda_sw > 0

    @pytest.mark.parametrize(
        "line, key",
        [
            ("lambda_b_fit = -1", "lambda_b_fit"),
            ("p_s = 1.5", "p_s"),
            ("r_jc = abc", "r_jc"),
            ("bogus = 1", "bogus"),
            ("topology = triangle", "topology"),
            ("t_a_c = -300", "t_a_c"),
        ],
    )
    def test_rejections_name_the_key(self, line, key):
        with pytest.raises(ScenarioError) as exc:
            parse_scenario(line)
        assert exc.value.key == key
        assert key in str(exc.value)

    def test_duplicate_key(self):
        with pytest.raises(ScenarioError, match="twice"):
            parse_scenario("p_s = 1\np_s = 0.5")

    def test_missing_required(self):
        with pytest.raises(ScenarioError, match="lambda_b_fit"):
            parse_scenario("t_a_c = 25\nr_jc = 1\nr_ha = 1\np_loss_w = 1\np_loss_half_w = 1").switch_rates()

    def test_waveform_used_when_loss_absent(self):
        scn = load_scenario("paper_repro")
        import dataclasses

        no_loss = dataclasses.replace(scn, p_loss_w=None, p_loss_half_w=None)
        assert no_loss.full_load_loss() == pytest.approx(1.34, abs=0.005)
        assert no_loss.half_load_loss() == pytest.approx(0.335, abs=0.0005)

    def test_keys_documented(self):
        assert "lambda_b_fit" in SCENARIO_KEYS and "c_l0_per_kwh" in SCENARIO_KEYS

    def test_missing_file(self):
        with pytest.raises(ScenarioError, match="not found"):
            load_scenario("/no/such/file.scn")


class TestCli:
    def test_mttf(self):
        code, out, _ = run("mttf", "--scenario", "paper_repro", "--topology", "non_redundant")
        assert code == 0
        assert "115713" in out

    def test_mttf_diagram_file(self, tmp_path):
        path = tmp_path / "d.txt"
        path.write_text("S1 -> F : 1000\nabsorbing: F\ninitial: S1\n")
        code, out, _ = run("mttf", "--diagram", str(path))
        assert code == 0 and "1e+06" in out

    def test_compare(self):
        code, out, _ = run("compare", "--scenario", "paper_repro")
        assert code == 0
        assert "heatsink: shunt_parallel" in out
        assert "imperfect_coverage: shunt_parallel" in out

    def test_compare_truncated_flag(self):
        assert run("compare", "--scenario", "paper_repro", "--truncated")[0] == 0
        assert run("compare", "--scenario", "paper_repro", "--truncated", "--full-eq24")[0] == 2

    def test_region(self):
        code, out, _ = run("region", "--tj", "106.2", "--tjh", "44.9", "--a", "3082")
        assert code == 0
        assert out.splitlines()[1].startswith("shunt_parallel")
        assert "68.6324" in out

    def test_region_needs_input(self):
        code, _, err = run("region")
        assert code == 2 and "--tj" in err

    def test_losses(self):
        scn = load_scenario("paper_repro")
        code, out, _ = run("losses", "--scenario", "paper_repro", "--waveform", f"{scn.base_dir}/paper_repro_full.csv")
        assert code == 0 and out.splitlines()[1].startswith("1.34")

    def test_cost_ranked(self):
        code, out, _ = run("cost", "--scenario", "paper_repro", "--rank")
        names = [line.split()[0] for line in out.splitlines()[1:]]
        assert code == 0
        assert names == ["shunt_parallel", "shunt_standby", "series_standby", "series_parallel", "non_redundant"]

    def test_sweep_csv_full_precision_round_trip(self, tmp_path):
        path = tmp_path / "s.csv"
        code, _, _ = run(
            "sweep", "--scenario", "paper_repro", "--param", "t_a", "--from", "0", "--to", "50",
            "--steps", "6", "--precision", "full", "--csv", str(path),
        )
        assert code == 0
        rows = list(csv.DictReader(path.open()))
        assert [float(r["value"]) for r in rows] == [0.0, 10.0, 20.0, 30.0, 40.0, 50.0]
        from fclrel.topologies import Topology, mttf_closed_form
        import dataclasses

        scn = dataclasses.replace(load_scenario("paper_repro"), t_a_c=20.0)
        expected = mttf_closed_form(Topology.SHUNT_PARALLEL, scn.switch_rates(), scn.coverage())
        assert float(rows[2]["mttf_sh_p_h"]) == expected

    def test_reruns_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for p in (a, b):
            run("cost", "--scenario", "paper_repro", "--csv", str(p), "--precision", "full")
        assert a.read_bytes() == b.read_bytes()

    def test_mc_validate_small(self):
        code, out, _ = run(
            "mc-validate", "--scenario", "paper_repro", "--topology", "shunt_parallel",
            "--trials", "20000", "--seed", "1",
        )
        assert code == 0 and "yes" in out

    def test_diagram(self):
        code, out, _ = run("diagram", "--scenario", "paper_repro", "--topology", "series_standby")
        assert code == 0 and "absorbing:" in out and "full coverage" in out

    def test_bad_scenario_value_exits_2(self, tmp_path):
        path = tmp_path / "bad.scn"
        path.write_text(MINIMAL.replace("lambda_b_fit = 10", "lambda_b_fit = -10"))
        code, _, err = run("mttf", "--scenario", str(path))
        assert code == 2 and "lambda_b_fit" in err

    def test_unknown_subcommand_and_flag(self, capsys):
        assert run("frobnicate")[0] == 2
        assert run("mttf", "--nope")[0] == 2
