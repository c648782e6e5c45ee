"""Output records shared by the text and JSON renderers.

Text output is derived from the same record the JSON carries, so
``render_text(OutputRecord.from_json(record.to_json()))`` reproduces the text
mode exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields

from fasttau.inference import Alternative

SIGNIFICANT_DIGITS = 7


def format_number(value) -> str:
    """Seven significant digits, trailing zeros dropped (``0.1288889``, ``1``)."""
    if value is None:
        return "NA"
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


@dataclass(frozen=True)
class OutputRecord:
    tau: float
    n: int
    p_value: float | None = None
    alternative: str | None = None
    method: str | None = None
    timings: int | None = None

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> OutputRecord:
        return cls(**{f.name: data.get(f.name) for f in fields(cls)})

    @classmethod
    def from_json(cls, text: str) -> OutputRecord:
        return cls.from_dict(json.loads(text))


def render_text(record: OutputRecord) -> str:
    if record.p_value is None:
        lines = [format_number(record.tau)]
    else:
        sentence = Alternative.parse(record.alternative).text
        lines = [
            "$statistic",
            f"[1] {format_number(record.tau)}",
            "",
            "$p_value",
            f"[1] {format_number(record.p_value)}",
            "",
            "$alternative",
            f'[1] "{sentence}"',
        ]
    if record.timings is not None:
        lines.append(f"# elapsed {record.timings} ns")
    return "\n".join(lines) + "\n"


def render_json(record: OutputRecord) -> str:
    return record.to_json() + "\n"
