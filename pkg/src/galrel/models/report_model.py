"""
Report records and their deterministic JSON and text renderings.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import mpmath
import pandas as pd

from galrel.config.constants import REPORT_DIGITS
from galrel.exact.certified import Certified


def to_plain(value: Any) -> Any:
    """JSON-ready form: certified reals become value/radius string pairs."""
    if isinstance(value, Certified):
        return value.to_dict(REPORT_DIGITS)
    if hasattr(value, "to_dict"):
        return to_plain(value.to_dict())
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, REPORT_DIGITS)
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    return str(value)


def _cell(value: Any) -> str:
    plain = to_plain(value)
    if isinstance(plain, dict) and set(plain) == {"value", "radius"}:
        return f"{plain['value']} ± {plain['radius']}"
    if isinstance(plain, (dict, list)):
        return json.dumps(plain, sort_keys=True, ensure_ascii=False)
    if plain is None:
        return "-"
    return str(plain)


@dataclass
class ReportRow:
    """One checked quantity.

    ``passed`` is None for rows that report data without a verdict.
    """

    check: str
    subject: str
    values: Dict[str, Any] = field(default_factory=dict)
    provenance: Dict[str, str] = field(default_factory=dict)
    passed: Optional[bool] = None
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "subject": self.subject,
            "values": to_plain(self.values),
            "provenance": dict(self.provenance),
            "passed": self.passed,
            "note": self.note,
        }


@dataclass
class Report:
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    rows: List[ReportRow] = field(default_factory=list)
    residuals: Dict[str, Any] = field(default_factory=dict)
    flags: Dict[str, Any] = field(default_factory=dict)
    versions: Dict[str, str] = field(default_factory=dict)
    exit_code: int = 0

    @property
    def passed(self) -> bool:
        return all(row.passed is not False for row in self.rows)

    def add(self, row: ReportRow) -> ReportRow:
        self.rows.append(row)
        return row

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "inputs": to_plain(self.inputs),
            "rows": [row.to_dict() for row in self.rows],
            "residuals": to_plain(self.residuals),
            "flags": to_plain(self.flags),
            "passed": self.passed,
            "exit_code": self.exit_code,
            "versions": dict(self.versions),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def _frames(self) -> List[pd.DataFrame]:
        frames = []
        for check in dict.fromkeys(row.check for row in self.rows):
            records = []
            for row in self.rows:
                if row.check != check:
                    continue
                record: Dict[str, str] = {"subject": row.subject}
                for key in sorted(row.values):
                    record[key] = _cell(row.values[key])
                record["passed"] = _cell(row.passed)
                if row.note:
                    record["note"] = row.note
                records.append(record)
            frame = pd.DataFrame.from_records(records).fillna("")
            frame.attrs["check"] = check
            frames.append(frame)
        return frames

    def to_text(self) -> str:
        """Aligned tables, one per check, followed by residuals and verdict."""
        parts = [f"galrel {self.command}"]
        for frame in self._frames():
            parts.append(f"\n[{frame.attrs['check']}]")
            parts.append(frame.to_string(index=False))
        if self.residuals:
            residuals = pd.DataFrame(
                [
                    {"name": k, "value": _cell(v)}
                    for k, v in sorted(self.residuals.items())
                ]
            )
            parts.append("\n[residuals]")
            parts.append(residuals.to_string(index=False))
        for key in sorted(self.flags):
            parts.append(f"{key}: {_cell(self.flags[key])}")
        verdict = "PASS" if self.passed else "FAIL"
        if self.exit_code > 1:
            verdict = "ERROR"
        parts.append(f"\nresult: {verdict} (exit {self.exit_code})")
        return "\n".join(parts) + "\n"
