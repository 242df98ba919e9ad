"""Run correlation context for log tracing."""

import contextvars
import logging
from typing import Optional

# One id per CLI invocation; library calls outside the CLI log "unknown"
run_id_var: contextvars.ContextVar[Optional[str]] = contextvars.ContextVar(
    "run_id", default=None
)


def get_run_id() -> str:
    """Get the current run's correlation id.

    Returns:
        The run id string, or 'unknown' if not set.
    """
    rid = run_id_var.get()
    return rid if rid else "unknown"


def set_run_id(rid: str) -> None:
    """Set the run id for the current context.

    Args:
        rid: The run id (usually a UUID string).
    """
    if rid:
        run_id_var.set(rid)


class RunIdFilter(logging.Filter):
    """Stamp every record with the current run id."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run_id = get_run_id()
        return True
