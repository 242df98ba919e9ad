"""End-to-end tests for the command-line front end.

Tests validate:
- Exit codes: 0 when all checks pass, 1 when a verification fails, 2 for usage errors
- JSON documents on standard output and problem documents on standard error
- Byte-identical output for identical arguments
"""

import json

import pytest
from pydantic import ValidationError

from pauligeom import cli
from pauligeom.cli import CommandParams, run
from pauligeom.errors import StructureError
from pauligeom.reports import VerificationReport


def _problem(err: str) -> dict:
    """First problem document on standard error; log lines come as plain text."""
    return json.loads(next(line for line in err.splitlines() if line.startswith("{")))


class TestVerifyCommands:
    """Test the verification subcommands."""

    def test_main_even_json(self, json_run):
        code, body, _ = json_run("verify", "main", "--n", "4")
        assert code == 0
        assert body["pass"] is True
        assert body["params"] == {"subcommand": "verify main", "n": 4, "d": None, "q": None}
        assert [c["name"] for c in body["checks"]] == [
            "symmetric_set",
            "main_observation",
            "counting_obstruction_hyperbolic",
            "counting_obstruction_elliptic",
        ]
        main = next(c for c in body["checks"] if c["name"] == "main_observation")
        assert main["details"]["branch"] == "even"

    def test_main_odd_text(self, capsys):
        code = run(["verify", "main", "--n", "3"])
        out = capsys.readouterr().out
        assert code == 0
        assert "35 mod 3 = 2" in out
        assert out.rstrip().endswith("overall: PASS")

    def test_dye_json_counts(self, capsys):
        code = run(["verify", "dye", "--n", "4", "--format", "json"])
        out = capsys.readouterr().out
        assert code == 0
        assert '"quadric_points":135,"spread_lines_on_quadric":45,"hermitian_points":45' in out

    def test_gq(self, json_run):
        code, body, _ = json_run("verify", "gq")
        assert code == 0
        assert [c["name"] for c in body["checks"]] == ["gq_hermitian", "gq_dual"]

    def test_commuting(self, json_run):
        code, body, _ = json_run("verify", "commuting", "--n", "2")
        assert code == 0
        assert body["checks"][0]["details"]["count"] == 15


class TestOtherCommands:
    """Test points, spread and table subcommands."""

    def test_points(self, json_run):
        code, body, _ = json_run("points", "--d", "1", "--q", "4")
        assert code == 0
        points = body["checks"][0]["details"]["points"]
        assert points == ["(1,0)", "(0,1)", "(1,1)", "(1,w)", "(1,w2)"]

    def test_spread_geometric(self, json_run):
        code, body, _ = json_run("spread", "--n", "2", "--check-geometric")
        assert code == 0
        assert [c["name"] for c in body["checks"]] == ["spread", "geometric", "segre"]

    def test_pauli_table_text(self, capsys):
        code = run(["pauli", "table", "--n", "2"])
        out = capsys.readouterr().out
        assert code == 0
        assert "    YY" in out.splitlines()

    def test_three_to_one(self, json_run):
        code, body, _ = json_run("table", "three-to-one", "--n", "4")
        assert code == 0
        assert len(body["checks"][0]["details"]["table"]) == 45


class TestExitCodes:
    """Test usage errors, parameter errors and failing verifications."""

    def test_unsupported_field(self, capsys):
        """NEGATIVE: q = 7 is rejected before any verification."""
        code = run(["points", "--d", "2", "--q", "7"])
        captured = capsys.readouterr()
        assert code == 2
        assert captured.out == ""
        problem = _problem(captured.err)
        assert problem["type"] == "urn:pauligeom:error:parameter_error"
        assert problem["status"] == 2
        assert problem["instance"] == "points"
        assert len(problem["run_id"]) == 36
        assert "usage:" in captured.err

    def test_parameter_problem_detail_is_plain(self, capsys):
        """NEGATIVE: the problem carries the validator message and a flat errors list."""
        assert run(["points", "--d", "2", "--q", "7"]) == 2
        problem = _problem(capsys.readouterr().err)
        message = "unsupported field order 7 (supported: 2, 4)"
        assert problem["detail"] == message
        assert problem["errors"] == [message]

    def test_command_params_error_message(self):
        with pytest.raises(ValidationError) as exc_info:
            CommandParams(command="verify dye", n=9)
        (error,) = exc_info.value.errors()
        assert error["type"] == "parameter_error"
        assert not error["msg"].startswith("Value error")

    def test_unknown_subcommand(self, capsys):
        code = run(["frobnicate"])
        captured = capsys.readouterr()
        assert code == 2
        assert "usage:" in captured.err

    def test_missing_n(self, capsys):
        assert run(["verify", "dye"]) == 2
        assert "usage:" in capsys.readouterr().err

    def test_n_out_of_range(self, capsys):
        assert run(["verify", "commuting", "--n", "5"]) == 2
        assert "parameter_error" in capsys.readouterr().err

    def test_odd_three_to_one_table(self, capsys):
        assert run(["table", "three-to-one", "--n", "3"]) == 2
        assert "parameter_error" in capsys.readouterr().err

    def test_failed_check_exits_one(self, monkeypatch, json_run):
        failing = VerificationReport(name="gq_hermitian", passed=False, witness={"reason": "r"})
        monkeypatch.setitem(cli.COMMANDS, "verify gq", lambda params: [failing])
        code, body, _ = json_run("verify", "gq")
        assert code == 1
        assert body["pass"] is False

    def test_structure_error_exits_one(self, monkeypatch, capsys):
        def broken(params):
            raise StructureError("spread is not geometric", {"pair": [0, 1]})

        monkeypatch.setitem(cli.COMMANDS, "verify gq", broken)
        code = run(["verify", "gq"])
        problem = _problem(capsys.readouterr().err)
        assert code == 1
        assert problem["type"] == "urn:pauligeom:error:structure_error"
        assert problem["errors"] == {"pair": [0, 1]}


class TestOutputDiscipline:
    """Test determinism and the split between stdout and stderr."""

    def test_byte_identical_runs(self, capsys):
        run(["verify", "main", "--n", "2", "--format", "json"])
        first = capsys.readouterr().out
        run(["verify", "main", "--n", "2", "--format", "json"])
        second = capsys.readouterr().out
        assert first == second

    def test_verbose_logs_go_to_stderr(self, capsys):
        code = run(["verify", "main", "--n", "2", "--verbose"])
        captured = capsys.readouterr()
        assert code == 0
        assert "Running verify main" in captured.err
        assert "Running" not in captured.out
