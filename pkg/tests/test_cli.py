import json

import pytest

from consensus_spectra import parse_model
from consensus_spectra.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDesignCommand:
    def test_json_payload(self, capsys):
        code, out, err = invoke(
            capsys, "design", "--model", "ring:n=4,a=0.5", "--method", "pipeline", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["h"] == pytest.approx(0.727273, abs=1e-6)
        assert payload["rate"] == pytest.approx(0.545455, abs=1e-6)
        assert payload["method"] == "PairSolve"
        assert payload["reconciliation"]["tag"] == "Identical"
        assert payload["assumptions"]

    def test_degenerate_exit_code(self, capsys):
        code, out, err = invoke(capsys, "design", "--model", "ring:n=3,a=0")
        assert code == 2
        assert err.startswith("error type=DegenerateError")

    def test_minimax_method(self, capsys):
        code, out, _ = invoke(
            capsys, "design", "--model", "ring:n=4,a=0", "--method", "minimax"
        )
        assert code == 0
        assert json.loads(out)["h"] == pytest.approx(2 / 3, abs=1e-8)

    def test_closed_method_mixed_parity_exit_2(self, capsys):
        code, _, err = invoke(
            capsys, "design", "--model", "torus:dims=4x5,a=0.3", "--method", "closed"
        )
        assert code == 2
        assert "UnsupportedParityError" in err

    def test_model_string_round_trips(self, capsys):
        code, out, _ = invoke(capsys, "design", "--model", "rnearest:n=12,r=3,a=0.25")
        printed = json.loads(out)["model"]
        assert parse_model(printed) == parse_model("rnearest:n=12,r=3,a=0.25")


class TestSpectrumCommand:
    def test_csv_real_parts(self, capsys):
        code, out, _ = invoke(capsys, "spectrum", "--model", "ring:n=4,a=0", "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "index;re;im"
        res = [round(float(line.split(";")[1]), 9) for line in lines[1:]]
        assert res == [0.0, 1.0, 2.0, 1.0]

    def test_source_oracle(self, capsys):
        code, out, _ = invoke(
            capsys, "spectrum", "--model", "ring:n=5,a=0.4", "--source", "dft", "--format", "json"
        )
        assert code == 0
        assert len(json.loads(out)) == 5

    def test_dense_cap_exit_2(self, capsys):
        code, _, err = invoke(
            capsys,
            "spectrum",
            "--model",
            "ring:n=64,a=0",
            "--source",
            "dft",
            "--dense-cap",
            "32",
        )
        assert code == 2
        assert "SizeError" in err


class TestValidationErrors:
    def test_bad_model_exit_1(self, capsys):
        code, _, err = invoke(capsys, "design", "--model", "ring:n=2,a=0")
        assert code == 1
        assert err.startswith("error type=ParameterError")

    def test_unknown_kind_exit_1(self, capsys):
        code, _, err = invoke(capsys, "spectrum", "--model", "mesh:n=4,a=0")
        assert code == 1


class TestSimulateAndVerify:
    def test_simulate_csv(self, capsys):
        code, out, _ = invoke(
            capsys,
            "simulate",
            "--model",
            "ring:n=8,a=0.2",
            "--steps",
            "50",
            "--seed",
            "7",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "step;error_norm;average"
        assert len(lines) >= 10

    def test_simulate_json_summary(self, capsys):
        code, out, _ = invoke(
            capsys, "simulate", "--model", "torus:dims=4x4,a=0", "--format", "json", "--steps", "200"
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["converged"]
        assert payload["h"] == pytest.approx(0.4, abs=1e-9)

    def test_verify_report(self, capsys):
        code, out, _ = invoke(
            capsys, "verify", "--model", "ring:n=16,a=0.3", "--trials", "3", "--seed", "42"
        )
        assert code == 0
        report = json.loads(out)
        assert len(report) == 3
        assert all(entry["pass"] for entry in report)
        assert set(report[0]) == {"trial", "seed", "empirical_factor", "gamma", "pass", "note"}


class TestSweepAndFigure:
    def test_sweep_rows(self, capsys):
        code, out, _ = invoke(
            capsys,
            "sweep",
            "--model",
            "ring:n=4,a=0.5",
            "--vary",
            "n=4,8,16",
            "--format",
            "csv",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 4
        assert lines[1].split(";")[1] == "4"

    def test_sweep_range_grammar(self, capsys):
        code, out, _ = invoke(
            capsys, "sweep", "--model", "ring:n=8,a=0", "--vary", "a=0:0.4:0.2", "--format", "csv"
        )
        assert code == 0
        assert len(out.strip().split("\n")) == 4

    def test_sweep_bad_vary_exit_1(self, capsys):
        code, _, err = invoke(
            capsys, "sweep", "--model", "ring:n=8,a=0", "--vary", "q=1,2"
        )
        assert code == 1

    def test_figure_to_file(self, capsys, tmp_path):
        code, out, _ = invoke(capsys, "figure", "--id", "6", "--out", str(tmp_path))
        assert code == 0
        written = tmp_path / "fig6_dimension.csv"
        assert written.exists()
        assert len(written.read_text().strip().split("\n")) == 6

    def test_figure_stdout(self, capsys):
        code, out, _ = invoke(capsys, "figure", "--id", "3", "--format", "csv")
        assert code == 0
        assert out.startswith("kind;n;r;dims;a;")
