"""Integration tests for the command-line interface."""

import csv
import json

import numpy as np

from src.cli import main


def solve_args(tmp_path, *extra: str) -> list[str]:
    return [
        "solve",
        "--problem",
        "known",
        "--dim",
        "10",
        "--output-dir",
        str(tmp_path),
        *extra,
    ]


class TestValidateCommand:
    """Test suite for the validate subcommand."""

    def test_admissible_triple(self, capsys):
        """Test exit status 0 for rho below the bound."""
        assert main(["validate", "--alpha", "0", "--rho", "1", "--mu", "0.5"]) == 0
        assert capsys.readouterr().out.startswith("ok")

    def test_rejected_triple(self, capsys):
        """Test exit status 1 for alpha = 0.9, rho = 1.5."""
        assert main(["validate", "--alpha", "0.9", "--rho", "1.5", "--mu", "0.5"]) == 1
        assert capsys.readouterr().out.startswith("rejected")

    def test_out_of_range_alpha(self):
        """Test that alpha >= 1 is a usage error."""
        assert main(["validate", "--alpha", "1.5", "--rho", "1", "--mu", "0.5"]) == 1


class TestSolveCommand:
    """Test suite for the solve subcommand."""

    def test_writes_trace_and_summary(self, tmp_path):
        """Test a converging run and its output files."""
        args = solve_args(tmp_path, "--mu", "0.5", "--alpha", "0.2", "--rho", "0.9")
        assert main(args) == 0

        with (tmp_path / "run_trace.csv").open() as handle:
            rows = list(csv.DictReader(handle))
        assert rows
        assert float(rows[-1]["residual"]) <= 1e-5

        summary = json.loads((tmp_path / "run_summary.json").read_text())
        assert summary["termination"] == "converged"
        assert summary["iterations"] == len(rows)
        assert summary["timings"] == {}

    def test_reruns_are_byte_identical(self, tmp_path):
        """Test that two runs with the same flags write the same bytes."""
        first, second = tmp_path / "first", tmp_path / "second"
        assert main(solve_args(first, "--mu", "0.5")) == 0
        assert main(solve_args(second, "--mu", "0.5")) == 0
        for name in ("run_trace.csv", "run_summary.json"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_bilinear_constant_stepsize(self, tmp_path):
        """Test a small bilinear run with lambda = mu / L."""
        args = [
            "solve",
            "--m",
            "10",
            "--n",
            "10",
            "--stepsize",
            "constant",
            "--mu",
            "0.5",
            "--eps",
            "1e-6",
            "--output-dir",
            str(tmp_path),
            "--name",
            "bilinear",
        ]
        assert main(args) == 0
        with (tmp_path / "bilinear_trace.csv").open() as handle:
            rows = list(csv.DictReader(handle))
        assert all(row["gap"] != "" for row in rows)

    def test_rejected_parameters(self, tmp_path):
        """Test exit status 1 when validate_params refuses (alpha, rho)."""
        args = solve_args(tmp_path, "--mu", "0.5", "--alpha", "0.9", "--rho", "1.5")
        assert main(args) == 1

    def test_lambda_excludes_mu(self, tmp_path):
        """Test that --lambda and --mu together are refused."""
        assert main(solve_args(tmp_path, "--lambda", "0.1", "--mu", "0.5")) == 1

    def test_cap_exit_status(self, tmp_path):
        """Test exit status 2 when max_iter is reached."""
        args = solve_args(
            tmp_path, "--lambda", "0.1", "--max-iter", "3", "--eps", "1e-300"
        )
        assert main(args) == 2
        summary = json.loads((tmp_path / "run_summary.json").read_text())
        assert summary["termination"] == "max_iter"
        assert summary["iterations"] == 3

    def test_stepsize_mode_required(self, tmp_path):
        """Test that a solve without --lambda or --mu is refused."""
        assert main(solve_args(tmp_path)) == 1
        assert not (tmp_path / "run_trace.csv").exists()

    def test_lambda1_needs_adaptive_mode(self, tmp_path):
        """Test that --lambda1 is refused next to --lambda."""
        assert main(solve_args(tmp_path, "--lambda", "0.1", "--lambda1", "1")) == 1

    def test_dump_matrices(self, tmp_path):
        """Test that the bilinear data is written to the requested directory."""
        args = [
            "solve",
            "--m",
            "4",
            "--n",
            "3",
            "--mu",
            "0.5",
            "--max-iter",
            "2",
            "--output-dir",
            str(tmp_path),
            "--dump-matrices",
            str(tmp_path / "instance"),
        ]
        assert main(args) == 2
        loaded = np.loadtxt(tmp_path / "instance" / "A.csv", delimiter=",")
        assert loaded.shape == (4, 3)
        assert (tmp_path / "instance" / "b.csv").exists()

    def test_dump_matrices_needs_bilinear(self, tmp_path):
        """Test that --dump-matrices is refused for other problems."""
        args = solve_args(tmp_path, "--mu", "0.5", "--dump-matrices", str(tmp_path))
        assert main(args) == 1

    def test_unknown_flag(self, tmp_path):
        """Test that a bad flag is a usage error."""
        assert main(solve_args(tmp_path, "--mu", "0.5", "--bogus")) == 1

    def test_missing_command(self):
        """Test that no subcommand is a usage error."""
        assert main([]) == 1

    def test_unknown_log_level(self):
        """Test that a bad --log-level exits with status 1."""
        args = ["--log-level", "bogus", "validate", "--alpha", "0", "--rho", "1"]
        assert main([*args, "--mu", "0.5"]) == 1

    def test_log_level_is_case_insensitive(self):
        """Test that a lowercase level name is accepted."""
        args = ["--log-level", "info", "validate", "--alpha", "0", "--rho", "1"]
        assert main([*args, "--mu", "0.5"]) == 0


class TestDynamicsCommand:
    """Test suite for the dynamics subcommand."""

    def test_strict_assumption_failure(self, tmp_path):
        """Test that gamma = 1, tau = 9 aborts with --strict."""
        output = tmp_path / "traj.csv"
        args = [
            "dynamics",
            "--problem",
            "known",
            "--dim",
            "4",
            "--gamma",
            "1",
            "--tau",
            "9",
            "--strict",
            "--output",
            str(output),
        ]
        assert main(args) == 1
        assert not output.exists()

    def test_zero_operator_residual(self, tmp_path):
        """Test that B = 0 with the identity resolvent keeps ||Mx|| at 0."""
        output = tmp_path / "traj.csv"
        args = [
            "dynamics",
            "--problem",
            "zero",
            "--dim",
            "3",
            "--horizon",
            "1",
            "--dt",
            "0.1",
            "--output",
            str(output),
        ]
        assert main(args) == 0
        with output.open() as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 11
        assert all(float(row["residual_norm"]) == 0.0 for row in rows)

    def test_known_instance_trajectory(self, tmp_path):
        """Test that the residual norm shrinks on the known instance."""
        output = tmp_path / "traj.csv"
        args = [
            "dynamics",
            "--problem",
            "known",
            "--dim",
            "4",
            "--horizon",
            "20",
            "--dt",
            "0.05",
            "--output",
            str(output),
        ]
        assert main(args) == 0
        with output.open() as handle:
            rows = list(csv.DictReader(handle))
        assert float(rows[-1]["residual_norm"]) < float(rows[0]["residual_norm"])


class TestSweepCommand:
    """Test suite for the sweep subcommand."""

    def test_sweep_from_json_spec(self, tmp_path):
        """Test a small grid written to the requested CSV."""
        spec = {
            "mu": [0.5],
            "alpha": [0.0, 0.9],
            "rho": [1.0],
            "eps": 1e-6,
            "problem": {"m": 5, "n": 5, "seed": 2},
        }
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps(spec))
        output = tmp_path / "sweep.csv"

        assert main(["sweep", str(spec_path), "--output", str(output)]) == 0
        with output.open() as handle:
            rows = list(csv.DictReader(handle))
        assert [row["alpha"] for row in rows] == ["0", "0.90000000000000002"]
        assert [row["status"] for row in rows] == ["converged", "skipped"]
        assert "wall_time" not in rows[0]

    def test_invalid_spec(self, tmp_path):
        """Test that a malformed spec is a usage error."""
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps({"mu": [2.0], "alpha": [0.0], "rho": [1.0]}))
        assert main(["sweep", str(spec_path)]) == 1

    def test_missing_spec_file(self, tmp_path):
        """Test that an unreadable spec is reported with status 1."""
        assert main(["sweep", str(tmp_path / "absent.json")]) == 1
