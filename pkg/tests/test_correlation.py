"""Tests for run correlation in logs.

Tests validate:
- A fresh UUID run id per CLI invocation
- RunIdFilter stamps every record
- 'unknown' outside any run
"""

import contextvars
import logging
import re

from pauligeom.cli import run
from pauligeom.correlation import RunIdFilter, get_run_id, run_id_var, set_run_id

UUID_PATTERN = r"^[0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12}$"


class TestRunId:
    """Test the context variable."""

    def test_unknown_when_unset(self):
        ctx = contextvars.Context()
        assert ctx.run(get_run_id) == "unknown"

    def test_set_and_get(self):
        token = run_id_var.set(None)
        try:
            set_run_id("abc")
            assert get_run_id() == "abc"
        finally:
            run_id_var.reset(token)

    def test_empty_id_ignored(self):
        token = run_id_var.set("kept")
        try:
            set_run_id("")
            assert get_run_id() == "kept"
        finally:
            run_id_var.reset(token)

    def test_each_run_gets_a_uuid(self, capsys):
        run(["verify", "commuting", "--n", "2"])
        first = get_run_id()
        run(["verify", "commuting", "--n", "2"])
        second = get_run_id()
        capsys.readouterr()
        assert re.match(UUID_PATTERN, first)
        assert re.match(UUID_PATTERN, second)
        assert first != second


class TestRunIdFilter:
    """Test record stamping."""

    def test_filter_stamps_record(self):
        record = logging.LogRecord("pauligeom", logging.INFO, __file__, 1, "msg", None, None)
        token = run_id_var.set("rid-7")
        try:
            assert RunIdFilter().filter(record)
        finally:
            run_id_var.reset(token)
        assert record.run_id == "rid-7"

    def test_run_id_in_log_lines(self, capsys):
        run(["verify", "commuting", "--n", "2", "--verbose"])
        err = capsys.readouterr().err
        assert f"[{get_run_id()}]" in err
