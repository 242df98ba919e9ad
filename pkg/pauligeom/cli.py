"""Command-line front end.

Reports go to standard output, logs and problem documents to standard error. Exit status
is 0 when every check passes, 1 when a verification fails and 2 when no verification was
attempted (usage or parameter errors).
"""

import argparse
import json
import logging
import sys
import uuid
from typing import Callable, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from pydantic_core import PydanticCustomError

from pauligeom import __version__, theorems
from pauligeom.correlation import RunIdFilter, get_run_id, set_run_id
from pauligeom.errors import GeometryError, ParameterError
from pauligeom.reports import (
    ReportDocument,
    ReportParams,
    VerificationReport,
    render_json,
    render_text,
)
from pauligeom.validation import ParameterValidator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - [%(run_id)s] %(message)s"


def configure_logging(verbose: bool = False) -> None:
    """Send logs to standard error, INFO with ``--verbose`` and WARNING otherwise."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )
    for handler in logging.getLogger().handlers:
        handler.addFilter(RunIdFilter())


# ============= Parameter models =============
# Upper bound on N per command; None means the command takes no N.
_QUBIT_LIMITS = {
    "points": None,
    "spread": ParameterValidator.MAX_QUBITS,
    "verify dye": ParameterValidator.MAX_VERIFY_QUBITS,
    "verify main": ParameterValidator.MAX_VERIFY_QUBITS,
    "verify gq": None,
    "verify triality": None,
    "verify commuting": ParameterValidator.MAX_COMMUTING_QUBITS,
    "pauli table": ParameterValidator.MAX_QUBITS,
    "table three-to-one": ParameterValidator.MAX_VERIFY_QUBITS,
}


class CommandParams(BaseModel):
    """Validated parameters of one invocation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: str = Field(..., description="Subcommand path, e.g. 'verify main'")
    n: Optional[int] = Field(None, description="Qubit count / half-dimension N")
    d: Optional[int] = Field(None, description="Projective dimension for 'points'")
    q: Optional[int] = Field(None, description="Field order for 'points'")
    check_geometric: bool = False
    output_format: str = Field("text", pattern="^(text|json)$")

    @model_validator(mode="after")
    def validate_ranges(self):
        """Apply the shared ParameterValidator ranges for the chosen command."""
        if self.command not in _QUBIT_LIMITS:
            raise PydanticCustomError(
                "unknown_command", "unknown command {command}", {"command": self.command}
            )
        try:
            if self.command == "points":
                ParameterValidator.validate_field_order(self.q)
                ParameterValidator.validate_dimension(self.d, self.q)
            high = _QUBIT_LIMITS[self.command]
            if high is not None:
                ParameterValidator.validate_qubit_count(self.n, high=high)
        except ParameterError as e:
            raise PydanticCustomError("parameter_error", "{reason}", {"reason": e.message})
        return self

    def report_params(self) -> ReportParams:
        return ReportParams(subcommand=self.command, n=self.n, d=self.d, q=self.q)


# ============= Commands =============
def _points(p: CommandParams) -> list[VerificationReport]:
    return [theorems.points_report(p.d, p.q)]


def _spread(p: CommandParams) -> list[VerificationReport]:
    return theorems.spread_report(p.n, check_geometric=p.check_geometric)


def _verify_dye(p: CommandParams) -> list[VerificationReport]:
    return [theorems.dye_verify(p.n)]


def _verify_main(p: CommandParams) -> list[VerificationReport]:
    return [
        theorems.symmetric_set_report(p.n),
        theorems.main_observation(p.n),
        *theorems.obstruction_reports(p.n),
    ]


def _verify_gq(p: CommandParams) -> list[VerificationReport]:
    return theorems.gq_reports()


def _verify_triality(p: CommandParams) -> list[VerificationReport]:
    return [theorems.triality_numerology()]


def _verify_commuting(p: CommandParams) -> list[VerificationReport]:
    return [theorems.commuting_sets_report(p.n)]


def _pauli_table(p: CommandParams) -> list[VerificationReport]:
    return [theorems.symmetric_set_report(p.n)]


def _three_to_one(p: CommandParams) -> list[VerificationReport]:
    return [theorems.three_to_one_report(p.n)]


COMMANDS: dict[str, Callable[[CommandParams], list[VerificationReport]]] = {
    "points": _points,
    "spread": _spread,
    "verify dye": _verify_dye,
    "verify main": _verify_main,
    "verify gq": _verify_gq,
    "verify triality": _verify_triality,
    "verify commuting": _verify_commuting,
    "pauli table": _pauli_table,
    "table three-to-one": _three_to_one,
}


# ============= Argument parsing =============
def build_parser() -> argparse.ArgumentParser:
    """Parser with ``--format``/``--verbose`` accepted after every leaf subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default="text", dest="output_format"
    )
    common.add_argument("--verbose", action="store_true", help="INFO logs on standard error")

    parser = argparse.ArgumentParser(
        prog="pauligeom",
        description="Finite-geometry verifier for spreads, quadrics and Pauli operators",
    )
    parser.add_argument("--version", action="version", version=f"pauligeom {__version__}")
    sub = parser.add_subparsers(dest="group", required=True)

    points = sub.add_parser("points", parents=[common], help="dump the points of PG(d, q)")
    points.add_argument("--d", type=int, required=True)
    points.add_argument("--q", type=int, required=True)
    points.set_defaults(command="points")

    spread = sub.add_parser("spread", parents=[common], help="build the Desarguesian spread")
    spread.add_argument("--n", type=int, required=True)
    spread.add_argument("--check-geometric", action="store_true")
    spread.set_defaults(command="spread")

    verify = sub.add_parser("verify", help="run a verification pipeline")
    checks = verify.add_subparsers(dest="check", required=True)
    for name, needs_n in (
        ("dye", True),
        ("main", True),
        ("gq", False),
        ("triality", False),
        ("commuting", True),
    ):
        leaf = checks.add_parser(name, parents=[common])
        if needs_n:
            leaf.add_argument("--n", type=int, required=True)
        leaf.set_defaults(command=f"verify {name}")

    pauli = sub.add_parser("pauli", help="Pauli operator listings")
    pauli_sub = pauli.add_subparsers(dest="listing", required=True)
    pauli_table = pauli_sub.add_parser("table", parents=[common], help="symmetric operators")
    pauli_table.add_argument("--n", type=int, required=True)
    pauli_table.set_defaults(command="pauli table")

    table = sub.add_parser("table", help="correspondence tables")
    table_sub = table.add_subparsers(dest="table", required=True)
    triples = table_sub.add_parser("three-to-one", parents=[common], help="operator triples")
    triples.add_argument("--n", type=int, required=True)
    triples.set_defaults(command="table three-to-one")

    return parser


def _write_problem(problem: dict, usage: Optional[str] = None) -> None:
    sys.stderr.write(json.dumps(problem) + "\n")
    if usage:
        sys.stderr.write(usage)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the command and write its report; returns the exit status."""
    set_run_id(str(uuid.uuid4()))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage (or help/version) on the right stream
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    configure_logging(args.verbose)
    command = args.command

    try:
        params = CommandParams(
            command=command,
            n=getattr(args, "n", None),
            d=getattr(args, "d", None),
            q=getattr(args, "q", None),
            check_geometric=getattr(args, "check_geometric", False),
            output_format=args.output_format,
        )
    except ValidationError as e:
        messages = [err.get("msg", "Invalid value") for err in e.errors()]
        logger.warning(
            "Parameter validation failed",
            extra={"command": command, "error_count": len(messages)},
        )
        error = ParameterError("; ".join(messages), details=messages)
        _write_problem(error.to_problem(command, get_run_id()), parser.format_usage())
        return EXIT_USAGE

    logger.info(f"Running {command}", extra={"command": command, "n": params.n})
    try:
        checks = COMMANDS[command](params)
    except GeometryError as e:
        logger.warning(
            f"Command error: {e.code} - {e.message}",
            extra={"command": command, "error_code": e.code, "exit_status": e.exit_status},
        )
        usage = parser.format_usage() if e.exit_status == EXIT_USAGE else None
        _write_problem(e.to_problem(command, get_run_id()), usage)
        return e.exit_status

    doc = ReportDocument.assemble(params.report_params(), checks)
    if params.output_format == "json":
        sys.stdout.write(render_json(doc).decode("utf-8"))
    else:
        sys.stdout.write(render_text(doc))
    sys.stdout.flush()

    logger.info(
        f"Finished {command}: {'pass' if doc.passed else 'fail'}",
        extra={"command": command, "checks": len(checks), "passed": doc.passed},
    )
    return EXIT_OK if doc.passed else EXIT_FAILED


def main() -> int:
    return run(sys.argv[1:])
