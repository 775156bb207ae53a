"""Reports shared by the CLI: a list of records rendered as text or JSON lines."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .core import format_rational


@dataclass
class Record:
    kind: str
    fields: dict
    text: str


@dataclass
class Report:
    title: str
    records: list[Record] = field(default_factory=list)
    failures: int = 0

    def add(self, kind: str, text: str, **fields):
        self.records.append(Record(kind, {k: _literal(v) for k, v in fields.items()}, text))

    def fail(self, kind: str, text: str, **fields):
        self.failures += 1
        self.add(kind, text, failed=True, **fields)

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _literal(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, dict):
        return {str(k): _literal(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_literal(x) for x in v]
    return v


def render(report: Report, fmt: str = "human") -> str:
    if fmt == "structured":
        lines = [json.dumps({"kind": r.kind, **r.fields}, ensure_ascii=False) for r in report.records]
        return "\n".join(lines) + ("\n" if lines else "")
    if not report.records:
        return "OK\n"
    lines = [f"== {report.title} =="] if report.title else []
    lines += [r.text for r in report.records]
    return "\n".join(lines) + "\n"
