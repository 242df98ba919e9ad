"""Error hierarchy with problem-details rendering.

Every error carries a stable ``code`` and the process ``exit_status`` the CLI uses
when the error escapes a command. The problem document follows the RFC 7807 layout
(type, title, status, detail, instance) plus the run id of the invocation.
"""

from typing import Any, Optional

ERROR_TYPE_PREFIX = "urn:pauligeom:error:"


class GeometryError(Exception):
    """Base error for every failure raised by the library."""

    code = "geometry_error"
    exit_status = 2

    def __init__(self, message: str, details: Optional[dict[str, Any] | list[Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_problem(self, instance: str, run_id: str) -> dict[str, Any]:
        """Render the error as a problem-details document.

        Args:
            instance: The subcommand that was running.
            run_id: Correlation id of the current invocation.

        Returns:
            Plain dict ready for ``json.dumps``.
        """
        return {
            "type": f"{ERROR_TYPE_PREFIX}{self.code}",
            "title": self.code.replace("_", " ").title(),
            "status": self.exit_status,
            "detail": self.message,
            "instance": instance,
            "run_id": run_id,
            **({"errors": self.details} if self.details else {}),
        }


class ParameterError(GeometryError, ValueError):
    """Raised when an argument is outside the supported range."""

    code = "parameter_error"


class DimensionError(ParameterError):
    """Raised when vector or matrix dimensions do not fit together."""

    code = "dimension_error"


class ParseError(ParameterError):
    """Raised when a textual operator label cannot be decoded."""

    code = "parse_error"


class NoEquivalenceError(GeometryError):
    """Raised when two quadratic forms are not isometric."""

    code = "no_equivalence"


class StructureError(GeometryError):
    """Raised when an input lacks a structural property an operation requires."""

    code = "structure_error"
    exit_status = 1


class InternalConsistencyError(GeometryError):
    """Raised when a cross-check that must always hold fails."""

    code = "internal_consistency"
    exit_status = 1
