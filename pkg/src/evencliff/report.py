"""Machine-readable verdicts shared by the library checks and the CLI."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = "1.0"

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class Report:
    verdict: str = PASS
    findings: list[dict[str, Any]] = field(default_factory=list)
    constants: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def __bool__(self):
        return self.passed

    def add(self, kind: str, **data) -> "Report":
        self.findings.append({"kind": kind, **data})
        return self

    def fail(self, kind: str, **data) -> "Report":
        if self.verdict == PASS:
            self.verdict = FAIL
        return self.add(kind, **data)

    def error(self, kind: str, **data) -> "Report":
        self.verdict = ERROR
        return self.add(kind, **data)

    def merge(self, other: "Report", prefix: str | None = None) -> "Report":
        for f in other.findings:
            self.findings.append({**f, "check": prefix} if prefix else f)
        self.constants.update(other.constants)
        if other.verdict == ERROR:
            self.verdict = ERROR
        elif other.verdict == FAIL and self.verdict == PASS:
            self.verdict = FAIL
        return self

    def body(self) -> dict[str, Any]:
        return {"verdict": self.verdict, "findings": self.findings, "constants": self.constants}


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(data: Any) -> str:
    text = data if isinstance(data, str) else canonical_json(data)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def envelope(command: str, report: Report, input_digest: str | None, timing: float | None = None) -> dict[str, Any]:
    """Full CLI report; ``timing`` sits outside ``body_digest``."""
    body = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input_digest": input_digest,
        **report.body(),
    }
    return {**body, "body_digest": digest(body), "timing": {"seconds": round(timing, 6) if timing is not None else None}}
