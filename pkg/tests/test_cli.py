"""CLI contract: subcommands, exit codes, output formats, determinism."""

import csv
import io
import json

import pytest

import ostrowski.quadrature as quadrature
import ostrowski.toolkit as toolkit
from ostrowski.cli import SweepConfig, main, run_sweep
from ostrowski.core import DomainError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBoundCommand:
    def test_t20_json(self, capsys):
        code, out, _ = run(
            capsys, "bound", "--theorem", "t20", "--a", "0", "--b", "1",
            "--x", "0.5", "--s", "1", "--da", "1", "--db", "1",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["theorem"] == "t20"
        assert payload["value"] == pytest.approx(0.25, rel=1e-12)
        assert payload["a"] == 0.0 and payload["b"] == 1.0

    def test_z_human(self, capsys):
        code, out, _ = run(
            capsys, "bound", "--theorem", "z", "--a", "0", "--b", "1",
            "--x", "0.5", "--s", "1", "--p", "2", "--da", "1", "--db", "1",
            "--format", "human",
        )
        assert code == 0
        assert "0.288675" in out

    def test_eq11(self, capsys):
        code, out, _ = run(
            capsys, "bound", "--theorem", "eq11", "--a", "0", "--b", "2",
            "--x", "0.5", "--m", "1",
        )
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(0.625, rel=1e-12)

    def test_reversed_interval_usage_error(self, capsys):
        code, _, err = run(
            capsys, "bound", "--theorem", "t20", "--a", "1", "--b", "0",
            "--x", "0.5", "--s", "1", "--da", "1", "--db", "1",
        )
        assert code == 2
        assert "interval requires a < b" in err

    def test_missing_parameter_named(self, capsys):
        code, _, err = run(
            capsys, "bound", "--theorem", "t21", "--a", "0", "--b", "1",
            "--x", "0.5", "--s", "1", "--p", "2", "--da", "1", "--db", "1",
        )
        assert code == 2
        assert "--dx" in err

    def test_eq15_missing_p_named(self, capsys):
        code, _, err = run(
            capsys, "bound", "--theorem", "eq15", "--a", "0", "--b", "1",
            "--da", "1", "--db", "1",
        )
        assert code == 2
        assert "--p" in err

    def test_unknown_theorem(self, capsys):
        code, _, _ = run(capsys, "bound", "--theorem", "nope", "--a", "0", "--b", "1")
        assert code == 2

    def test_csv_format(self, capsys):
        code, out, _ = run(
            capsys, "bound", "--theorem", "eq14", "--a", "0", "--b", "1",
            "--da", "1", "--db", "1", "--format", "csv",
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][:2] == ["theorem", "value"]
        assert float(rows[1][1]) == 0.25

    def test_json_deterministic(self, capsys):
        argv = (
            "bound", "--theorem", "teo1", "--a", "0", "--b", "1", "--x", "0.3",
            "--s", "0.5", "--p", "3", "--da", "0.7", "--db", "1.9",
        )
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2


class TestVerifyCommand:
    def test_default_config_passes(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0
        payload = json.loads(out)
        assert payload["failures"] == 0
        assert payload["total"] == len(payload["records"]) > 0

    def test_byte_identical_output(self, capsys):
        _, out1, _ = run(capsys, "verify")
        _, out2, _ = run(capsys, "verify")
        assert out1 == out2

    def test_counterexample_fails_with_witness(self, capsys):
        # |f'| of |t|^1.5 is concave, so the s=1 hypotheses fail and the
        # bounds genuinely break at some grid points
        code, out, _ = run(
            capsys, "verify", "--functions", "powabs:1.5", "--s-grid", "1",
        )
        assert code == 1
        payload = json.loads(out)
        assert payload["failures"] > 0
        failing = [r for r in payload["records"] if not r["holds"]]
        assert all("powabs:1.5" in r["context"] for r in failing)
        assert all("x=" in r["context"] for r in failing)

    def test_empty_function_list(self, capsys):
        code, _, err = run(capsys, "verify", "--functions", " ; ")
        assert code == 2
        assert "empty" in err

    def test_interval_override_needs_both_flags(self, capsys):
        code, _, err = run(capsys, "verify", "--a", "0.5")
        assert code == 2
        assert "--a" in err and "--b" in err

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify", "--out", str(path))
        assert code == 0
        assert out == ""
        assert json.loads(path.read_text())["failures"] == 0

    def test_csv_format(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--functions", "poly:0,1", "--s-grid", "1",
            "--x-points", "3", "--format", "csv",
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["lhs", "rhs", "holds", "margin", "context"]
        assert len(rows) == 1 + 5 * 3  # five theorems, three x points

    def test_oracle_failure_exit_code(self, capsys, monkeypatch):
        monkeypatch.setattr(toolkit, "DEFAULT_ORACLE_PANELS", 1)
        code, _, err = run(capsys, "verify", "--functions", "breckner:0,1,0,0.25")
        assert code == 3
        assert "oracle" in err


class TestSweepConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            SweepConfig(s_grid=())
        with pytest.raises(DomainError):
            SweepConfig(function_specs=())
        with pytest.raises(DomainError):
            SweepConfig(tol=0.0)
        with pytest.raises(DomainError):
            SweepConfig(x_grid_points=1)
        with pytest.raises(DomainError):
            SweepConfig(output_format="xml")

    def test_run_sweep_record_count(self):
        cfg = SweepConfig(
            s_grid=(0.5,), x_grid_points=3, p_grid=(2.0,),
            function_specs=("poly:0,0,1",),
        )
        records = run_sweep(cfg)
        assert len(records) == 5 * 3
        assert all(r.holds for r in records)


class TestMeansCommand:
    def test_row_values(self, capsys):
        code, out, _ = run(
            capsys, "means", "--a", "1", "--b", "2", "--s", "0.5",
            "--p", "2", "--q", "2",
        )
        assert code == 0
        row = json.loads(out)
        assert row["A^s"] == pytest.approx(1.224744871391589, rel=1e-12)
        assert row["L_s^s"] == pytest.approx(1.21895141649746, rel=1e-12)
        assert row["gap"] == pytest.approx(0.005793454894128984, abs=1e-9)
        assert row["p1"] == pytest.approx(0.14714045207910317, rel=1e-9)
        assert row["p2"] == pytest.approx(0.13971946208343752, rel=1e-9)
        assert row["p3"] == pytest.approx(0.12456214868187001, rel=1e-9)

    def test_invalid_inputs(self, capsys):
        code, _, err = run(capsys, "means", "--a", "2", "--b", "1", "--s", "0.5")
        assert code == 2
        code, _, err = run(capsys, "means", "--a", "1", "--b", "2", "--s", "1")
        assert code == 2


class TestQuadCommand:
    def test_quadratic_report(self, capsys):
        code, out, _ = run(
            capsys, "quad", "--fn", "poly:0,0,1", "--a", "0", "--b", "1",
            "--target", "1e-3", "--variant", "p4", "--p", "2",
        )
        assert code == 0
        payload = json.loads(out)
        assert list(payload.keys()) == ["approx", "error_bound", "variant", "panels"]
        assert payload["approx"] == pytest.approx(1.0 / 3.0, abs=1e-3)
        assert payload["error_bound"] <= 1e-3
        assert payload["variant"] == "p4"
        assert payload["panels"] == 512

    def test_p4_requires_p(self, capsys):
        code, _, err = run(
            capsys, "quad", "--fn", "poly:0,0,1", "--a", "0", "--b", "1",
            "--target", "1e-3", "--variant", "p4",
        )
        assert code == 2
        assert "--p" in err

    def test_p6_requires_q(self, capsys):
        code, _, err = run(
            capsys, "quad", "--fn", "poly:0,0,1", "--a", "0", "--b", "1",
            "--target", "1e-3", "--variant", "p6",
        )
        assert code == 2
        assert "--q" in err

    def test_bad_function_spec(self, capsys):
        code, _, err = run(
            capsys, "quad", "--fn", "mystery:1", "--a", "0", "--b", "1",
            "--target", "1e-3", "--variant", "p5",
        )
        assert code == 2
        assert "mystery" in err

    def test_budget_exhaustion_exit_code(self, capsys, monkeypatch):
        monkeypatch.setattr(quadrature, "DEFAULT_PANEL_BUDGET", 16)
        code, _, err = run(
            capsys, "quad", "--fn", "poly:0,0,1", "--a", "0", "--b", "1",
            "--target", "1e-9", "--variant", "p4", "--p", "2",
        )
        assert code == 3
        assert "budget" in err

    def test_deterministic(self, capsys):
        argv = (
            "quad", "--fn", "breckner:0,1,0,0.5", "--a", "0.5", "--b", "2",
            "--target", "1e-2", "--variant", "p5",
        )
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2


class TestIdentityCommand:
    def test_default_sweep_passes(self, capsys):
        code, out, _ = run(capsys, "identity")
        assert code == 0
        payload = json.loads(out)
        assert payload["failures"] == 0
        # 7 polynomials x 3 intervals x 9 evaluation points
        assert payload["total"] == 7 * 3 * 9


class TestConfigFile:
    def test_defaults_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("a=1\nb=2\ns=0.5\n# comment\np=3\n")
        code, out, _ = run(capsys, "means", "--config", str(cfg))
        assert code == 0
        row = json.loads(out)
        assert (row["a"], row["b"], row["s"], row["p"]) == (1.0, 2.0, 0.5, 3.0)

        code, out, _ = run(capsys, "means", "--config", str(cfg), "--s", "0.25")
        assert code == 0
        assert json.loads(out)["s"] == 0.25  # explicit flag wins

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "means", "--config", "/definitely/not/here",
                           "--a", "1", "--b", "2", "--s", "0.5")
        assert code == 2

    def test_malformed_line(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("tol\n")
        code, _, err = run(capsys, "identity", "--config", str(cfg))
        assert code == 2
        assert "key=value" in err


class TestUsage:
    def test_no_subcommand(self, capsys):
        code, _, _ = run(capsys)
        assert code == 2

    def test_help_exits_zero(self, capsys):
        code, _, _ = run(capsys, "--help")
        assert code == 0
