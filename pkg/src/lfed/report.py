"""Check results and the versioned JSON report."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Optional

SCHEMA = "lfed.report/v1"

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Check:
    id: str
    status: str
    detail: str = ""
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        out = {"id": self.id, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        out["detail"] = self.detail
        return out


def verdict(ok: bool) -> str:
    return PASS if ok else FAIL


@dataclass
class CheckReport:
    checks: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        for c in other.checks:
            self.add(Check(prefix + c.id, c.status, c.detail, c.witness))

    def exit_code(self) -> int:
        """0 all pass, 1 any failure, 3 when the only non-passes are inconclusive."""
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return 1
        if INCONCLUSIVE in statuses:
            return 3
        return 0

    def to_json(self, command: list, config: dict, elapsed_ms: Optional[float]) -> str:
        doc = {
            "schema": SCHEMA,
            "command": command,
            "config": config,
            "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: c.id)],
            "elapsed_ms": elapsed_ms,
        }
        return json.dumps(doc, indent=2, ensure_ascii=False)


def render_text(doc: dict) -> str:
    """Human-readable summary derived from a parsed JSON report."""
    lines = [f"{' '.join(doc['command'])}"]
    for c in doc["checks"]:
        line = f"  [{c['status']:>12}] {c['id']}"
        if c.get("detail"):
            line += f": {c['detail']}"
        if c.get("witness") is not None:
            line += f"  witness: {c['witness']}"
        lines.append(line)
    if doc.get("elapsed_ms") is not None:
        lines.append(f"  elapsed: {doc['elapsed_ms']:.1f} ms")
    return "\n".join(lines)
