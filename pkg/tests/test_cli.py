"""Command-line interface: envelopes, exit codes, golden table output."""

import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from bayescreen.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTextOutput:
    def test_ppv(self, capsys):
        code, out, err = run_cli(capsys, "ppv", "--sens", "0.6",
                                 "--spec", "0.95", "--pretest", "0.22401")
        assert code == 0
        assert out.startswith("ppv = 0.776")

    def test_precision_flag(self, capsys):
        code, out, _ = run_cli(capsys, "--precision", "2", "threshold",
                               "--sens", "0.6", "--spec", "0.95")
        assert code == 0
        assert out == "prevalence_threshold = 0.22\n"

    def test_precision_env(self, monkeypatch, capsys):
        monkeypatch.setenv("BAYESCREEN_PRECISION", "6")
        code, out, _ = run_cli(capsys, "threshold",
                               "--sens", "0.6", "--spec", "0.95")
        assert code == 0
        assert out == "prevalence_threshold = 0.224009\n"

    def test_infinite_lr(self, capsys):
        code, out, _ = run_cli(capsys, "lr", "--sens", "0.9", "--spec", "1.0")
        assert code == 0
        assert out == "positive_lr = inf\n"


class TestJsonEnvelope:
    def test_shape_and_values(self, capsys):
        code, out, _ = run_cli(capsys, "--json", "posttest",
                               "--pretest", "0.2", "--lr", "4")
        assert code == 0
        env = json.loads(out)
        assert env["schema_version"] == "1"
        assert env["command"] == "posttest"
        assert env["inputs"] == {"pretest": 0.2, "lr": 4.0}
        assert env["result"]["posttest"] == pytest.approx(0.5)
        assert env["warnings"] == []

    def test_flag_after_subcommand(self, capsys):
        code, out, _ = run_cli(capsys, "posttest", "--pretest", "0.2",
                               "--lr", "4", "--json")
        assert code == 0
        assert json.loads(out)["result"]["posttest"] == pytest.approx(0.5)

    def test_canonical_byte_identical(self, capsys):
        args = ("--json", "estimate", "rogan-gladen", "--t", "30",
                "--n", "100", "--sens", "0.9", "--spec", "0.8")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second
        env = json.loads(first)
        assert env["result"]["point"] == pytest.approx(0.1 / 0.7)

    def test_warning_surfaces_in_envelope(self, capsys):
        code, out, _ = run_cli(capsys, "--json", "estimate", "rogan-gladen",
                               "--t", "5", "--n", "100",
                               "--sens", "0.9", "--spec", "0.8")
        assert code == 0
        env = json.loads(out)
        assert env["result"]["clamped"] is True
        assert any("clamped" in w for w in env["warnings"])


class TestExitCodes:
    def test_domain_error_is_one(self, capsys):
        code, out, err = run_cli(capsys, "ppv", "--sens", "0", "--spec", "1",
                                 "--pretest", "0.5")
        assert code == 1
        assert "error:" in err
        assert "DegenerateTest" in err

    def test_usage_error_is_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["ppv", "--sens", "0.9", "--pretest", "1.5", "--spec", "0.9"])
        assert exc.value.code == 2

    def test_unknown_command_is_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_csv_without_payload_is_two(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "ppv", "--sens", "0.9", "--spec", "0.9",
                               "--pretest", "0.5",
                               "--csv", str(tmp_path / "x.csv"))
        assert code == 2
        assert "no CSV payload" in err


class TestTables:
    def test_table3_matches_golden(self, capsys):
        code, out, _ = run_cli(capsys, "tables", "--which", "3")
        assert code == 0
        assert out == (GOLDEN / "table3.csv").read_text()

    def test_table4_matches_golden(self, capsys):
        code, out, _ = run_cli(capsys, "tables", "--which", "4")
        assert code == 0
        assert out == (GOLDEN / "table4.csv").read_text()

    def test_both(self, capsys):
        code, out, _ = run_cli(capsys, "tables")
        assert code == 0
        assert out == ((GOLDEN / "table3.csv").read_text()
                       + (GOLDEN / "table4.csv").read_text())


class TestSimulateCommand:
    def test_seed_byte_reproducible(self, capsys):
        args = ("simulate", "--n", "200", "--prev", "0.2", "--sens", "0.9",
                "--spec", "0.9", "--seed", "17", "--replicates", "3")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second
        lines = first.strip().split("\n")
        assert lines[0] == "replicate,t,TP,FP,TN,FN"
        assert len(lines) == 4

    def test_different_seed_differs(self, capsys):
        base = ("simulate", "--n", "5000", "--prev", "0.2", "--sens", "0.9",
                "--spec", "0.9")
        _, a, _ = run_cli(capsys, *base, "--seed", "1")
        _, b, _ = run_cli(capsys, *base, "--seed", "2")
        assert a != b


class TestCsvExport:
    def test_curve_export(self, capsys, tmp_path):
        path = tmp_path / "curve.csv"
        code, _, _ = run_cli(capsys, "curve", "--sens", "0.6", "--spec",
                             "0.95", "--grid", "11", "--csv", str(path))
        assert code == 0
        lines = path.read_text().strip().split("\n")
        assert len(lines) == 12
        header = lines[0].split(",")
        assert len(header) == 2
        first = [float(v) for v in lines[1].split(",")]
        assert first == [0.0, 0.0]

    def test_density_export_normalized(self, capsys, tmp_path):
        path = tmp_path / "density.csv"
        code, _, _ = run_cli(capsys, "estimate", "baxter", "--t", "30",
                             "--n", "100", "--sens", "0.9", "--spec", "0.8",
                             "--grid", "512", "--csv", str(path))
        assert code == 0
        import numpy as np
        data = np.loadtxt(path, delimiter=",", skiprows=1)
        assert np.trapezoid(data[:, 1], data[:, 0]) == pytest.approx(
            1.0, abs=1e-6)


class TestHeuristicCommands:
    def test_pretest_findings(self, capsys):
        code, out, _ = run_cli(capsys, "--json", "pretest",
                               "--lr", "2", "--lr", "5")
        assert code == 0
        env = json.loads(out)
        assert env["result"]["min"] == pytest.approx(math.log(10) / 5,
                                                     abs=1e-12)
        assert env["result"]["mean"] == pytest.approx(
            (1 + math.log(10) / 5) / 2, abs=1e-12)

    def test_mcgee_default_constant(self, capsys):
        code, out, _ = run_cli(capsys, "--json", "mcgee",
                               "--pretest", "0.3", "--lr", "10")
        env = json.loads(out)
        assert env["result"]["posttest"] == pytest.approx(
            0.3 + math.log(10) * 0.22, abs=1e-12)
        assert env["result"]["exact"] == pytest.approx(30 / 37, abs=1e-12)

    def test_category_with_update(self, capsys):
        code, out, _ = run_cli(capsys, "--json", "category", "--p", "0.5",
                               "--test-result", "positive")
        env = json.loads(out)
        assert env["result"]["category"] == "uncertain"
        assert env["result"]["updated_category"] == "likely"

    def test_power_class(self, capsys):
        code, out, _ = run_cli(capsys, "--json", "power-class", "--lr", "100")
        env = json.loads(out)
        assert env["result"]["power_class"] == "Very strong confirmer"


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "bayescreen.cli", "posttest",
             "--pretest", "0.2", "--lr", "4"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.startswith("posttest = 0.5")
