# tests/conftest.py
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]  # repository root
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))


@pytest.fixture
def json_run(capsys):
    """Run the CLI with ``--format json`` and return (exit code, parsed stdout, stderr)."""
    import json

    from pauligeom.cli import run

    def _run(*argv):
        code = run([*argv, "--format", "json"])
        captured = capsys.readouterr()
        body = json.loads(captured.out) if captured.out else None
        return code, body, captured.err

    return _run
