"""Verification report models and their text/JSON renderings.

Serialized key order is fixed by field order: a document is
``{"version", "params": {"subcommand", "n", "d", "q"}, "checks": [...], "pass"}`` and a
check is ``{"name", "pass", "details", "witness"?}``.
"""

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_serializer, model_validator

from pauligeom import __version__


class VerificationReport(BaseModel):
    """Outcome of one check, with counts in ``details`` and a witness when it fails."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    name: str = Field(..., min_length=1, description="Check name")
    passed: bool = Field(..., alias="pass", description="Whether the check holds")
    details: dict[str, Any] = Field(default_factory=dict, description="Counts and parameters")
    witness: Optional[dict[str, Any]] = Field(None, description="Violation found, if any")

    @model_validator(mode="after")
    def failed_check_has_witness(self):
        if not self.passed and not self.witness:
            raise ValueError(f"failed check {self.name!r} must carry a witness")
        return self

    @model_serializer(mode="wrap")
    def drop_absent_witness(self, handler):
        data = handler(self)
        if data.get("witness") is None:
            data.pop("witness", None)
        return data


class ReportParams(BaseModel):
    """Parameters the document was produced for."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    subcommand: str
    n: Optional[int] = None
    d: Optional[int] = None
    q: Optional[int] = None


class ReportDocument(BaseModel):
    """All checks of one invocation; ``pass`` is the conjunction of the check passes."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    version: str = __version__
    params: ReportParams
    checks: list[VerificationReport] = Field(default_factory=list)
    passed: bool = Field(..., alias="pass")

    @classmethod
    def assemble(cls, params: ReportParams, checks: list[VerificationReport]) -> "ReportDocument":
        return cls(params=params, checks=checks, passed=all(c.passed for c in checks))

    @model_validator(mode="after")
    def pass_is_conjunction(self):
        if self.passed != all(c.passed for c in self.checks):
            raise ValueError("overall pass must equal the conjunction of check passes")
        return self


def render_json(doc: ReportDocument) -> bytes:
    """Compact UTF-8 JSON, newline-terminated; byte-identical for identical input."""
    return (doc.model_dump_json(by_alias=True) + "\n").encode("utf-8")


def _render_item(item: Any) -> str:
    if isinstance(item, dict):
        return "  ".join(_render_item(v) for v in item.values())
    if isinstance(item, (list, tuple)):
        return " ".join(_render_item(v) for v in item)
    if isinstance(item, bool):
        return "true" if item else "false"
    return str(item)


def render_text(doc: ReportDocument) -> str:
    """Human-readable report; list entries go one per line."""
    params = doc.params
    shown = ", ".join(
        f"{key}={value}" for key, value in (("n", params.n), ("d", params.d), ("q", params.q))
        if value is not None
    )
    lines = [f"pauligeom {doc.version} {params.subcommand}" + (f" ({shown})" if shown else "")]
    for check in doc.checks:
        lines.append(f"[{'PASS' if check.passed else 'FAIL'}] {check.name}")
        for section, values in (("", check.details), ("witness.", check.witness or {})):
            for key, value in values.items():
                if isinstance(value, list):
                    lines.append(f"  {section}{key}:")
                    lines.extend(f"    {_render_item(v)}" for v in value)
                else:
                    lines.append(f"  {section}{key}: {_render_item(value)}")
    lines.append(f"overall: {'PASS' if doc.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"
