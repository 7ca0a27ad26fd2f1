import json
import math
from fractions import Fraction
from pathlib import Path

import pytest

from src.cli import build_parser
from src.commands.verify import oracle_rows
from src.series import tree_function_series
from src.series.io import format_series, parse_series
from src.verify.models import tonks_gas

from tests.conftest import UNIT_RADIUS

UNIT_BALL = 4.0 * math.pi / 3.0


@pytest.fixture
def small_monte_carlo(mocker):
    mocker.patch("src.verify.mayer.AppConfig", mocker.Mock(VIRIAL_SEED=42, MC_SAMPLES=1024, MC_SHARDS=4))


class TestParser:
    def test_help_exits_cleanly(self):
        with pytest.raises(SystemExit) as excinfo:
            build_parser().parse_args(["--help"])
        assert excinfo.value.code == 0

    def test_missing_command(self, run_cli):
        result = run_cli()
        assert result.code == 1
        assert "error:" in result.err

    def test_unknown_command(self, run_cli):
        assert run_cli("plot").code == 1

    def test_bad_number(self, run_cli):
        result = run_cli("bound", "general", "--a", "one", "--b", "1")
        assert result.code == 1
        assert "--a" in result.err


class TestLambertW:
    def test_value(self, run_cli):
        result = run_cli("lambertw", "1")
        assert result.code == 0
        assert float(result.out) == pytest.approx(0.5671432904097838, abs=1e-15)

    def test_full_precision(self, run_cli):
        result = run_cli("lambertw", "2.718281828459045")
        assert float(result.out) == pytest.approx(1.0, abs=1e-15)

    def test_domain_error(self, run_cli):
        result = run_cli("lambertw", "-1")
        assert result.code == 1
        assert "Domain error" in result.err
        assert result.out == ""


class TestBound:
    def test_general(self, run_cli):
        result = run_cli("bound", "general", "--a", "1", "--b", "1", "--nmax", "3", "--check")
        assert result.code == 0
        document = result.json()
        assert document["status"] == "ok"
        assert document["mu"] == pytest.approx(math.e / 2)
        assert document["radius_lower"] == pytest.approx(UNIT_RADIUS, rel=1e-14)
        assert document["coeff_base"] * document["radius_lower"] == pytest.approx(1.0)
        assert document["virial_coeff_bounds"][0] == 1.0
        assert len(document["virial_coeff_bounds"]) == 3
        assert document["numeric"]["rho_lower"] == pytest.approx(UNIT_RADIUS, rel=1e-10)
        assert document["numeric"]["s_star"] == pytest.approx(0.31492, abs=1e-5)

    def test_general_vanishing_has_null_base(self, run_cli):
        document = run_cli("bound", "general", "--a", "1e100", "--b", "1e100").json()
        assert document["status"] == "vanishing"
        assert document["coeff_base"] is None
        assert document["radius_lower"] == 0.0

    def test_general_degenerate(self, run_cli):
        result = run_cli("bound", "general", "--a", "0", "--b", "1")
        assert result.code == 1

    def test_lp_from_flags(self, run_cli):
        document = run_cli("bound", "lp", "--beta", "1", "--C", "2").json()
        assert document["name"] == "improved-lp"
        assert document["radius_lower"] == pytest.approx(UNIT_RADIUS / 2, rel=1e-14)

    def test_lp_from_potential(self, run_cli, write_file, hard_sphere_json):
        path = write_file("hs.json", hard_sphere_json)
        document = run_cli("bound", "lp", "--beta", "1", "--potential", path).json()
        assert document["radius_lower"] == pytest.approx(UNIT_RADIUS / UNIT_BALL, rel=1e-12)

    def test_lp_takes_stability_from_potential(self, run_cli, write_file, square_well_json):
        path = write_file("sw.json", square_well_json)
        with_file = run_cli("bound", "lp", "--beta", "1", "--potential", path).json()
        overridden = run_cli("bound", "lp", "--beta", "1", "--potential", path, "--B", "0").json()
        assert with_file["radius_lower"] < overridden["radius_lower"]

    def test_lp_classic(self, run_cli):
        document = run_cli("bound", "lp-classic", "--beta", "1", "--B", "10", "--C", "1").json()
        assert document["radius_lower"] == pytest.approx(2 * UNIT_RADIUS * math.exp(-20.0), rel=1e-8)

    def test_pu(self, run_cli):
        document = run_cli("bound", "pu", "--beta", "1", "--R", "2").json()
        assert document["radius_lower"] == pytest.approx(UNIT_RADIUS / 2, rel=1e-14)

    def test_pu_surface_convention(self, run_cli, write_file, hard_sphere_json):
        path = write_file("hs.json", hard_sphere_json)
        document = run_cli(
            "bound", "pu", "--beta", "1", "--potential", path, "--B-convention", "surface"
        ).json()
        assert document["radius_lower"] == pytest.approx(UNIT_RADIUS / (4 * math.pi), rel=1e-12)

    def test_pu_needs_r(self, run_cli):
        result = run_cli("bound", "pu", "--beta", "1")
        assert result.code == 1
        assert "R(beta)" in result.err

    def test_mp_f(self, run_cli):
        document = run_cli("bound", "mp-F", "--u", "1").json()
        assert document["F"] == pytest.approx(UNIT_RADIUS, rel=1e-8)

    def test_mp_f_domain(self, run_cli):
        assert run_cli("bound", "mp-F", "--u", "0.5").code == 1

    def test_mp(self, run_cli):
        document = run_cli("bound", "mp", "--beta", "1", "--C", "1", "--kmax", "3").json()
        assert document["asymptotic_base"] == pytest.approx(4.1622, rel=1e-4)
        assert len(document["free_energy_coeff_bounds"]) == 3
        assert document["virial_coeff_bounds"][0] == pytest.approx(1.0)


class TestTempered:
    def test_square_well(self, run_cli, write_file, square_well_json):
        path = write_file("sw.json", square_well_json)
        document = run_cli("tempered", "--potential", path, "--beta", "1").json()
        shell = UNIT_BALL * (1.5**3 - 1.0)
        assert document["C"] == pytest.approx(UNIT_BALL + shell * (math.e - 1.0), rel=1e-10)
        assert document["R"] == pytest.approx(UNIT_BALL + shell, rel=1e-10)
        assert set(document) == {"C", "C_err", "R", "R_err"}

    def test_divergent(self, run_cli, write_file):
        path = write_file(
            "lr.json", json.dumps({"dim": 3, "core_radius": 1.0, "tail": {"type": "inverse_power", "c": 1.0, "p": 3.0}})
        )
        result = run_cli("tempered", "--potential", path, "--beta", "1")
        assert result.code == 1
        assert "Divergent" in result.err

    def test_missing_file(self, run_cli, tmp_path):
        result = run_cli("tempered", "--potential", str(tmp_path / "nope.json"), "--beta", "1")
        assert result.code == 1
        assert "Cannot read" in result.err

    def test_invalid_document(self, run_cli, write_file):
        path = write_file("bad.json", '{"dim": 0}')
        assert run_cli("tempered", "--potential", path, "--beta", "1").code == 1


class TestCompare:
    def test_csv(self, run_cli):
        result = run_cli("compare", "--betaB-max", "10", "--steps", "11")
        assert result.code == 0
        lines = result.out.splitlines()
        assert lines[0] == "betaB,r1,r2,r1_over_r2,f1,f2,f1_over_f2"
        assert len(lines) == 12
        first = [float(v) for v in lines[1].split(",")]
        last = [float(v) for v in lines[-1].split(",")]
        assert first[3] == pytest.approx(1.0, rel=1e-14)
        assert 1.25 <= last[3] <= 1.30

    def test_deterministic(self, run_cli):
        first = run_cli("compare", "--betaB-max", "5", "--steps", "21", "--workers", "3")
        second = run_cli("compare", "--betaB-max", "5", "--steps", "21")
        assert first.out == second.out

    def test_out_file(self, run_cli, tmp_path: Path):
        target = tmp_path / "factors.json"
        result = run_cli("compare", "--betaB-max", "2", "--steps", "3", "--format", "json", "--out", str(target))
        assert result.out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["data"]["betaB"] == [0.0, 1.0, 2.0]

    def test_very_cold_range(self, run_cli):
        result = run_cli("compare", "--betaB-max", "400", "--steps", "5")
        assert result.code == 0
        lines = result.out.splitlines()
        assert float(lines[4].split(",")[1]) == pytest.approx(math.exp(-601.0), rel=1e-12)
        assert lines[5] == "400.0,0.0,0.0,nan,0.0,0.0,nan"

    def test_single_step_rejected(self, run_cli):
        assert run_cli("compare", "--betaB-max", "2", "--steps", "1").code == 1


class TestSweep:
    def test_figure_svg(self, run_cli):
        result = run_cli("sweep", "--max", "20", "--figure", "1", "--steps", "41", "--format", "svg")
        assert result.code == 0
        assert result.out.count("<polyline") == 2

    def test_outputs_json(self, run_cli):
        document = run_cli("sweep", "--min", "8", "--max", "10", "--outputs", "quotients", "--steps", "5", "--format", "json").json()
        assert document["columns"] == ["betaB", "r1_over_r2", "f1_over_f2"]
        assert all(1.25 <= v <= 1.30 for v in document["data"]["r1_over_r2"])

    def test_needs_selection(self, run_cli):
        assert run_cli("sweep", "--max", "1").code == 1

    def test_figure_and_outputs_conflict(self, run_cli):
        assert run_cli("sweep", "--max", "1", "--figure", "2", "--outputs", "r1").code == 1


class TestSeries:
    def test_tree(self, run_cli):
        result = run_cli("series", "tree", "--order", "4")
        assert result.out == "0 0/1\n1 1/1\n2 1/1\n3 3/2\n4 8/3\n"

    def test_revert_inverse_tree(self, run_cli, write_file):
        path = write_file("xe.txt", "1 1\n2 -1\n3 1/2\n4 -1/6\n5 1/24\n6 -1/120\n")
        result = run_cli("series", "revert", "--in", path, "--order", "6")
        assert parse_series(result.out) == tree_function_series(6)

    def test_compose(self, run_cli, write_file):
        path = write_file("s.txt", "1 1\n2 1\n")
        result = run_cli("series", "compose", "--outer", path, "--inner", path, "--order", "4")
        assert result.out == "0 0/1\n1 1/1\n2 2/1\n3 2/1\n4 1/1\n"

    def test_lagrange(self, run_cli, write_file):
        exp = "".join(f"{n} 1/{math.factorial(n)}\n" for n in range(8))
        path = write_file("exp.txt", exp)
        result = run_cli("series", "lagrange", "--phi", path, "--order", "7")
        assert result.out == format_series(tree_function_series(7))

    def test_lagrange_pads_short_phi(self, run_cli, write_file):
        path = write_file("linear.txt", "0 1\n1 1\n")
        result = run_cli("series", "lagrange", "--phi", path, "--order", "3")
        assert result.code == 0
        assert result.out == "0 0/1\n1 1/1\n2 1/1\n3 1/1\n"

    def test_lagrange_catalan(self, run_cli, write_file):
        path = write_file("geometric.txt", "0 1\n1 1\n2 1\n")
        result = run_cli("series", "lagrange", "--phi", path, "--order", "3")
        assert result.out == "0 0/1\n1 1/1\n2 1/1\n3 2/1\n"

    def test_revert_not_invertible(self, run_cli, write_file):
        path = write_file("c.txt", "0 1\n1 1\n")
        result = run_cli("series", "revert", "--in", path, "--order", "1")
        assert result.code == 1


class TestVerify:
    def test_tonks_passes(self, run_cli):
        result = run_cli("verify", "--model", "tonks", "--order", "8")
        assert result.code == 0
        assert "all bounds dominate" in result.out
        assert "seed=" in result.out

    def test_tonks_rational_sigma(self, run_cli):
        document = run_cli("verify", "--sigma", "1/2", "--order", "4", "--format", "json").json()
        assert document["metadata"]["sigma"] == "1/2"
        assert document["domination"]["rows"][3]["exact_text"] == "1/8"

    def test_violation_exits_two(self, run_cli):
        result = run_cli("verify", "--model", "tonks", "--order", "4", "--C", "0.01", "--R", "0.01")
        assert result.code == 2
        assert "FAIL" in result.out
        assert "Verification failed" in result.err

    def test_ideal_gas_lacks_temperedness(self, run_cli):
        assert run_cli("verify", "--model", "ideal").code == 1

    def test_oracle(self, run_cli):
        document = run_cli("verify", "--order", "4", "--oracle", "--format", "json").json()
        assert [row["n"] for row in document["oracle"]] == [2, 3, 4]
        assert all(row["error"] < 1e-6 for row in document["oracle"])

    def test_oracle_ignores_temperedness_override(self, run_cli):
        result = run_cli("verify", "--order", "4", "--C", "3", "--oracle", "--format", "json")
        assert result.code == 0
        assert all(row["error"] < 1e-6 for row in result.json()["oracle"])

    def test_oracle_rows_use_rod_length(self):
        model = tonks_gas(Fraction(1, 2), 4).with_temperedness(C_beta=3.0)
        rows = oracle_rows(model)
        assert [row["n"] for row in rows] == [2, 3, 4]
        assert rows[0]["oracle"] == pytest.approx(-0.5, abs=1e-6)

    def test_hard_sphere_is_reproducible(self, run_cli, small_monte_carlo):
        argv = ("verify", "--model", "hard_sphere", "--order", "3", "--seed", "5", "--format", "json")
        first = run_cli(*argv)
        second = run_cli(*argv, "--workers", "2")
        assert first.code == 0
        assert first.out == second.out
        assert first.json()["metadata"]["seed"] == 5
