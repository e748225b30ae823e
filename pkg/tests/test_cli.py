"""Exit codes, output formats, round-trips, and byte-level determinism."""

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cycliclv import VerificationReport, integral_basis, make_system
from cycliclv.cli import main


def write_spec(tmp_path, name, entries):
    path = tmp_path / name
    path.write_text(json.dumps({"k": entries}), encoding="utf-8")
    return str(path)


@pytest.fixture
def wheel3(tmp_path):
    return write_spec(tmp_path, "wheel3.json", ["2", "1", "3"])


@pytest.fixture
def resonant4(tmp_path):
    return write_spec(tmp_path, "res4.json", ["2", "1", "3", "6"])


@pytest.fixture
def nonresonant4(tmp_path):
    return write_spec(tmp_path, "nonres4.json", ["1", "1", "1", "2"])


class TestIntegrals:
    def test_text_output(self, wheel3, capsys):
        assert main(["integrals", "--system", wheel3]) == 0
        out = capsys.readouterr().out
        assert "classification: ODD" in out
        assert "H1 = x1 + x2 + x3" in out
        assert "H2 exponents: 1, 3, 2" in out

    def test_nonresonant_reports_linear_only(self, nonresonant4, capsys):
        assert main(["integrals", "--system", nonresonant4]) == 0
        out = capsys.readouterr().out
        assert "classification: EVEN_NONRESONANT" in out
        assert "no monomial integrals" in out
        assert "H2" not in out

    def test_zero_parameter_exit_2(self, tmp_path, capsys):
        spec = write_spec(tmp_path, "zero.json", ["1", "0", "3"])
        assert main(["integrals", "--system", spec]) == 2
        err = capsys.readouterr().err
        assert "entry 2" in err

    def test_missing_file_exit_2(self, tmp_path, capsys):
        assert main(["integrals", "--system", str(tmp_path / "nope.json")]) == 2

    def test_malformed_json_exit_2(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        assert main(["integrals", "--system", str(path)]) == 2

    def test_unparseable_entry_exit_2(self, tmp_path, capsys):
        spec = write_spec(tmp_path, "bad.json", ["2", "abc", "3"])
        assert main(["integrals", "--system", spec]) == 2
        assert "entry 2" in capsys.readouterr().err

    def test_json_round_trip_exact(self, resonant4, capsys):
        assert main(["integrals", "--system", resonant4, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        parsed = [
            tuple(Fraction(e) for e in mono["exponents"])
            for mono in payload["monomials"]
        ]
        basis = integral_basis(make_system([2, 1, 3, 6]))
        assert parsed == [mono.exponents for mono in basis.monomials]
        assert payload["classification"] == "EVEN_RESONANT"

    def test_exact_decimal_entries(self, tmp_path, capsys):
        spec = write_spec(tmp_path, "dec.json", [0.25, "1/2", 3])
        assert main(["integrals", "--system", spec, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["k"] == ["1/4", "1/2", "3"]


class TestCheck:
    def test_odd_system_passes(self, wheel3, capsys):
        assert main(["check", "--system", wheel3]) == 0
        out = capsys.readouterr().out
        assert "check linear-integral: PASS" in out
        assert "check cofactor-cancellation[H2]: PASS" in out
        assert "check nullspace-formula-equivalence: PASS" in out
        assert "result: PASS" in out

    def test_resonant_system_passes(self, resonant4, capsys):
        assert main(["check", "--system", resonant4]) == 0
        out = capsys.readouterr().out
        assert "cofactor-cancellation[H3]" in out

    def test_nonresonant_notes_no_monomials(self, nonresonant4, capsys):
        assert main(["check", "--system", nonresonant4]) == 0
        out = capsys.readouterr().out
        assert "no monomial integrals" in out

    def test_n2_skips_exponent_machinery(self, tmp_path, capsys):
        spec = write_spec(tmp_path, "n2.json", ["1", "5"])
        assert main(["check", "--system", spec]) == 0
        assert "SKIP (n=2)" in capsys.readouterr().out

    def test_verification_failure_exit_1(self, wheel3, capsys, monkeypatch):
        from cycliclv import cli as cli_mod

        monkeypatch.setattr(
            cli_mod.verify,
            "check_linear_integral",
            lambda sys: VerificationReport(
                subject="linear-integral", passed=False, witness="forced"
            ),
        )
        assert main(["check", "--system", wheel3]) == 1
        out = capsys.readouterr().out
        assert "check linear-integral: FAIL (forced)" in out
        assert "result: FAIL" in out


class TestSimulate:
    def test_equilibrium_row_count(self, tmp_path, capsys):
        spec = write_spec(tmp_path, "sym.json", ["1", "1", "1"])
        out_csv = tmp_path / "traj.csv"
        code = main(
            [
                "simulate",
                "--system", spec,
                "--x0", "1,1,1",
                "--step", "1e-2",
                "--t-end", "1",
                "--out", str(out_csv),
            ]
        )
        assert code == 0
        lines = out_csv.read_text().splitlines()
        assert lines[0] == "t,x1,x2,x3,H1,H2,drift_H1,drift_H2"
        assert len(lines) == 1 + 101
        assert all(line.endswith(",0,0") for line in lines[1:])
        assert "status=ok" in capsys.readouterr().out

    def test_sample_every(self, tmp_path, capsys):
        spec = write_spec(tmp_path, "sym.json", ["1", "1", "1"])
        out_csv = tmp_path / "traj.csv"
        main(
            [
                "simulate",
                "--system", spec,
                "--x0", "1,1,1",
                "--step", "1e-2",
                "--t-end", "1",
                "--sample-every", "10",
                "--out", str(out_csv),
            ]
        )
        lines = out_csv.read_text().splitlines()
        # records 0,10,...,100: the final record is already on the grid
        assert len(lines) == 1 + 11

    def test_drift_summary(self, wheel3, tmp_path, capsys):
        out_csv = tmp_path / "traj.csv"
        code = main(
            [
                "simulate",
                "--system", wheel3,
                "--x0", "0.2,0.3,0.5",
                "--step", "1e-3",
                "--t-end", "10",
                "--out", str(out_csv),
            ]
        )
        assert code == 0
        summary = capsys.readouterr().out
        assert "max_drift_H1=" in summary and "max_drift_H2=" in summary
        drift = float(summary.split("max_drift_H1=")[1].split()[0])
        assert drift <= 1e-8

    def test_zero_x0_exit_2(self, wheel3, tmp_path, capsys):
        code = main(
            [
                "simulate",
                "--system", wheel3,
                "--x0", "0,0.5,0.5",
                "--out", str(tmp_path / "t.csv"),
            ]
        )
        assert code == 2

    def test_wrong_length_x0_exit_2(self, wheel3, tmp_path):
        code = main(
            [
                "simulate",
                "--system", wheel3,
                "--x0", "0.5,0.5",
                "--out", str(tmp_path / "t.csv"),
            ]
        )
        assert code == 2

    def test_positivity_breach_exit_3_keeps_partial_csv(self, tmp_path, capsys):
        spec = write_spec(tmp_path, "decay.json", ["1", "5"])
        out_csv = tmp_path / "partial.csv"
        code = main(
            [
                "simulate",
                "--system", spec,
                "--x0", "0.5,0.5",
                "--step", "1e-3",
                "--t-end", "20",
                "--out", str(out_csv),
            ]
        )
        assert code == 3
        assert "status=PositivityBreached" in capsys.readouterr().out
        lines = out_csv.read_text().splitlines()
        assert len(lines) > 100

    def test_rk45_method(self, wheel3, tmp_path, capsys):
        out_csv = tmp_path / "traj45.csv"
        code = main(
            [
                "simulate",
                "--system", wheel3,
                "--x0", "0.2,0.3,0.5",
                "--method", "rk45",
                "--step", "1e-2",
                "--t-end", "5",
                "--out", str(out_csv),
            ]
        )
        assert code == 0
        assert out_csv.exists()


def _run(args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "cycliclv.cli", *args],
        capture_output=True,
        cwd=cwd,
    )


class TestDeterminism:
    def test_check_runs_byte_identical(self, wheel3, tmp_path):
        first = _run(["check", "--system", wheel3, "--seed", "0"], tmp_path)
        second = _run(["check", "--system", wheel3, "--seed", "0"], tmp_path)
        assert first.returncode == second.returncode == 0
        assert first.stdout == second.stdout

    def test_simulate_runs_byte_identical(self, wheel3, tmp_path):
        outs = []
        for name in ("a.csv", "b.csv"):
            result = _run(
                [
                    "simulate",
                    "--system", wheel3,
                    "--x0", "0.2,0.3,0.5",
                    "--step", "1e-2",
                    "--t-end", "2",
                    "--out", name,
                ],
                tmp_path,
            )
            assert result.returncode == 0
            outs.append((result.stdout, (tmp_path / name).read_bytes()))
        assert outs[0] == outs[1]

    def test_csv_floats_round_trip(self, wheel3, tmp_path):
        result = _run(
            [
                "simulate",
                "--system", wheel3,
                "--x0", "0.2,0.3,0.5",
                "--step", "1e-2",
                "--t-end", "1",
                "--out", "c.csv",
            ],
            tmp_path,
        )
        assert result.returncode == 0
        lines = (tmp_path / "c.csv").read_text().splitlines()
        row = lines[1].split(",")
        assert float(row[1]) == 0.2
