# weylzhu/report.py
"""Emit command reports as JSON, CSV or a plain-text table.

A report is a command name, a list of flat rows and a metadata dict. JSON
and CSV are produced from the same converted rows, so both formats carry
identical values; rationals are written as "p/q" strings.
"""
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from functools import singledispatch
from io import StringIO
from pathlib import Path

import pandas as pd

from .linear import LinearCombination


@singledispatch
def to_cell(value):
    """Convert a value to something json.dumps and pandas both render exactly."""
    if hasattr(value, "as_dict"):
        return to_cell(value.as_dict())
    return str(value)


@to_cell.register(type(None))
@to_cell.register(bool)
@to_cell.register(int)
@to_cell.register(str)
def _(value):
    return value


@to_cell.register
def _(value: Fraction):
    return str(value)


@to_cell.register
def _(value: Enum):
    return value.value


@to_cell.register
def _(value: Path):
    return str(value)


@to_cell.register
def _(value: LinearCombination):
    return str(value)


@to_cell.register
def _(value: dict):
    return {str(k): to_cell(v) for k, v in value.items()}


@to_cell.register(list)
@to_cell.register(tuple)
@to_cell.register(frozenset)
@to_cell.register(set)
def _(value):
    items = [to_cell(v) for v in value]
    if isinstance(value, (set, frozenset)):
        items.sort(key=str)
    return items


@dataclass
class Report:
    command: str
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    passed: bool = True

    def columns(self):
        seen = []
        for row in self.rows:
            seen.extend(key for key in row if key not in seen)
        return seen

    def converted_rows(self):
        # nested cells are flattened to JSON text so CSV cells stay scalar
        return [
            {key: _flat(to_cell(value)) for key, value in row.items()}
            for row in self.rows
        ]

    def header(self, timestamp=True):
        header = {"command": self.command, "passed": self.passed}
        header.update({key: to_cell(value) for key, value in self.metadata.items()})
        if timestamp:
            header["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return header

    def to_frame(self):
        return pd.DataFrame(self.converted_rows(), columns=self.columns())


def _flat(cell):
    if isinstance(cell, (dict, list)):
        return json.dumps(cell, sort_keys=True)
    return cell


def to_json(report, timestamp=True):
    payload = report.header(timestamp)
    payload["rows"] = report.converted_rows()
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_csv(report, timestamp=True):
    buffer = StringIO()
    for key, value in sorted(report.header(timestamp).items()):
        text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
        buffer.write(f"# {key}: {text}\n")
    if report.rows:
        report.to_frame().to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def to_text(report, timestamp=True):
    lines = [f"{key}: {value}" for key, value in sorted(report.header(timestamp).items())]
    if report.rows:
        lines.append("")
        lines.append(report.to_frame().to_string(index=False))
    return "\n".join(lines) + "\n"


EMITTERS = {"json": to_json, "csv": to_csv, "text": to_text}


def render(report, fmt="json", timestamp=True):
    return EMITTERS[fmt](report, timestamp)


def write_report(report, fmt="json", out=None, timestamp=True):
    """Render the report and write it to ``out`` (or return the text)."""
    text = render(report, fmt, timestamp)
    if out is not None:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    return text


def error_payload(exc):
    return json.dumps(
        {"error": {"type": type(exc).__name__, "message": str(exc)}},
        sort_keys=True,
        indent=2,
    ) + "\n"
