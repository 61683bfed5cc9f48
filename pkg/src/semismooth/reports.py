"""Deterministic result reports.

A report records, for one input item, the status of every check that ran,
witness data for failures, and printable presentations of the objects the
run produced.  Serialization is byte-identical across runs on the same
input: keys are sorted, floats never appear, and wall-clock timing is kept
out of the serialized form (the CLI prints it to stderr instead).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .fpmod import FPModule
from .rings import RingPresentation

STATUSES = ("pass", "fail", "skipped")


@dataclass
class Report:
    """Outcome of running one corpus item or one-shot input."""

    item: str
    kind: str
    checks: dict = field(default_factory=dict)       # name -> {"status", "witness"}
    sections: dict = field(default_factory=dict)     # name -> presentation payload
    expected: tuple = ()
    timing: Optional[float] = None                   # seconds; never serialized

    def add(self, name: str, ok, witness=None) -> None:
        if isinstance(ok, str):
            if ok not in STATUSES:
                raise ValueError(f"bad status {ok!r}")
            status = ok
        else:
            status = "pass" if ok else "fail"
        entry = {"status": status}
        if witness is not None:
            entry["witness"] = witness
        self.checks[name] = entry

    def skip(self, name: str, reason: Optional[str] = None) -> None:
        self.add(name, "skipped", reason)

    def status_of(self, name: str) -> str:
        if name not in self.checks:
            return "skipped"
        return self.checks[name]["status"]

    def passed(self) -> bool:
        """Every expected check passed; with no expectation list, no check failed."""
        if self.expected:
            return all(self.status_of(n) == "pass" for n in self.expected)
        return all(c["status"] != "fail" for c in self.checks.values())


def ring_presentation(ring: RingPresentation) -> dict:
    return {
        "vars": list(ring.ambient.vars),
        "order": ring.ambient.order.kind,
        "relations": sorted(str(r) for r in ring.relations),
    }


def module_presentation(M: FPModule) -> dict:
    rows = sorted([str(c) for c in row] for row in M.relations.rows)
    return {"gens": M.ngens, "relations": rows}


def ideal_presentation(gens) -> list:
    return sorted(str(g) for g in gens)


def _jsonable(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


def json_payload(report: Report) -> dict:
    """Serializable form; timing is kept out so bytes reproduce across runs."""
    return {
        "item": report.item,
        "kind": report.kind,
        "checks": _jsonable(report.checks),
        "sections": _jsonable(report.sections),
        "expected": list(report.expected),
        "timing": None,
        "passed": report.passed(),
    }


def to_json(report: Report) -> str:
    return json.dumps(json_payload(report), sort_keys=True, separators=(",", ": "), indent=2) + "\n"


def _text_value(value, indent: str) -> list:
    lines = []
    if isinstance(value, dict):
        for k in sorted(value):
            sub = _text_value(value[k], indent + "  ")
            if len(sub) == 1 and not sub[0].startswith(indent + "  "):
                lines.append(f"{indent}{k}: {sub[0]}")
            else:
                lines.append(f"{indent}{k}:")
                lines.extend(sub)
    elif isinstance(value, (list, tuple)):
        for v in value:
            sub = _text_value(v, indent + "  ")
            if len(sub) == 1 and not sub[0].startswith(indent + "  "):
                lines.append(f"{indent}- {sub[0]}")
            else:
                lines.append(f"{indent}-")
                lines.extend(sub)
    else:
        return [str(_jsonable(value))]
    return lines


def to_text(report: Report) -> str:
    lines = [f"item: {report.item} ({report.kind})"]
    for name in report.checks:
        entry = report.checks[name]
        line = f"  {name}: {entry['status']}"
        if entry.get("witness") is not None and entry["status"] != "pass":
            line += f"  [{_jsonable(entry['witness'])}]"
        lines.append(line)
    for name in sorted(report.sections):
        value = report.sections[name]
        if isinstance(value, (dict, list, tuple)):
            lines.append(f"  {name}:")
            lines.extend(_text_value(value, "    "))
        else:
            lines.append(f"  {name}: {_jsonable(value)}")
    lines.append(f"  result: {'pass' if report.passed() else 'FAIL'}")
    return "\n".join(lines) + "\n"
