"""Reading numeric columns from delimited text."""

from __future__ import annotations

import csv
import logging
import math
import sys
from dataclasses import dataclass

import numpy as np

from fasttau.core import PairedSample, validate_sample
from fasttau.errors import ColumnNotFound, InputError, InputFileNotFound, ParseError, UsageError

log = logging.getLogger("fasttau")

STDIN = "-"
MISSING_TOKENS = frozenset({"", "na", "null", "none"})


@dataclass(frozen=True)
class ColumnSpec:
    """Where to find the x and y columns.

    Selectors are header names or 1-based column numbers. A selector that
    matches a header name wins over its reading as a number.
    """

    source: str
    x_selector: str | int
    y_selector: str | int
    delimiter: str = ","
    has_header: bool = True

    def __post_init__(self):
        if len(self.delimiter) != 1 or len(self.delimiter.encode("utf-8")) != 1:
            raise UsageError(f"delimiter must be a single byte, got {self.delimiter!r}")


@dataclass
class Table:
    header: list[str]
    rows: list[list[str]]
    line_numbers: list[int]

    @property
    def width(self) -> int:
        return len(self.header)


def read_table(source: str, delimiter: str = ",", has_header: bool = True) -> Table:
    """Read a delimited file (or standard input for ``"-"``) into strings."""
    try:
        if source == STDIN:
            records = _read_records(sys.stdin, delimiter)
        else:
            with open(source, newline="", encoding="utf-8") as fh:
                records = _read_records(fh, delimiter)
    except FileNotFoundError:
        raise InputFileNotFound(f"input file not found: {source}") from None
    except UnicodeDecodeError as exc:
        raise InputError(f"{source} is not valid UTF-8: {exc}") from None
    except (OSError, csv.Error) as exc:
        raise InputError(f"cannot read {source}: {exc}") from None

    if not records:
        raise InputError(f"{source} is empty")
    width = max(len(r) for _, r in records)
    if has_header:
        _, header = records.pop(0)
        header = [h.strip() for h in header]
        header += [str(i) for i in range(len(header) + 1, width + 1)]
    else:
        header = [str(i) for i in range(1, width + 1)]
    return Table(header, [r for _, r in records], [line for line, _ in records])


def _read_records(fh, delimiter):
    reader = csv.reader(fh, delimiter=delimiter)
    out = []
    for row in reader:
        if row and any(cell.strip() for cell in row):
            out.append((reader.line_num, row))
    return out


def resolve_column(selector, table: Table, has_header: bool = True) -> int:
    """0-based index of the column named or numbered by ``selector``."""
    text = str(selector).strip()
    if has_header and text in table.header:
        return table.header.index(text)
    if isinstance(selector, int) or text.isdigit():
        k = int(text)
        if 1 <= k <= table.width:
            return k - 1
    raise ColumnNotFound(selector, table.header)


def parse_cell(text: str, line: int, column: str, drop_missing: bool) -> float | None:
    """Parse one cell. ``None`` means missing and only occurs with ``drop_missing``.

    NaN and infinity parse as floats; NaN counts as missing when dropping,
    otherwise both are left for sample validation to reject.
    """
    token = text.strip()
    if token.lower() in MISSING_TOKENS:
        if drop_missing:
            return None
        raise ParseError(line, column, text)
    try:
        value = float(token)
    except ValueError:
        if drop_missing:
            return None
        raise ParseError(line, column, text) from None
    if drop_missing and math.isnan(value):
        return None
    return value


def _cell(row, j):
    return row[j] if j < len(row) else ""


def read_pairs(spec: ColumnSpec, drop_missing: bool = False):
    """Parse the two selected columns. Returns ``(x, y, dropped_rows)``."""
    table = read_table(spec.source, spec.delimiter, spec.has_header)
    jx = resolve_column(spec.x_selector, table, spec.has_header)
    jy = resolve_column(spec.y_selector, table, spec.has_header)
    if jx == jy:
        raise UsageError(f"x and y select the same column ({table.header[jx]!r})")
    xs, ys = [], []
    dropped = 0
    for row, line in zip(table.rows, table.line_numbers):
        a = parse_cell(_cell(row, jx), line, table.header[jx], drop_missing)
        b = parse_cell(_cell(row, jy), line, table.header[jy], drop_missing)
        if a is None or b is None:
            dropped += 1
            continue
        xs.append(a)
        ys.append(b)
    return xs, ys, dropped


def load_columns(spec: ColumnSpec, drop_missing: bool = False) -> PairedSample:
    """Load and validate the (x, y) sample described by ``spec``.

    With ``drop_missing`` rows with a missing or unparseable cell in either
    column are removed and their number is logged as a warning.
    """
    xs, ys, dropped = read_pairs(spec, drop_missing)
    if dropped:
        log.warning("dropped %d row(s) with missing or unparseable values", dropped)
    return validate_sample(xs, ys)


def load_numeric_columns(
    source: str,
    columns=None,
    delimiter: str = ",",
    has_header: bool = True,
    drop_missing: bool = False,
):
    """Load several columns for a correlation matrix.

    Returns ``(names, arrays)``; missing cells become NaN when ``drop_missing``
    is set. Without ``columns``, every column is used except those holding a
    cell that is neither a number nor a missing-value token.
    """
    table = read_table(source, delimiter, has_header)
    if columns:
        picked = [resolve_column(c, table, has_header) for c in columns]
        if len(set(picked)) != len(picked):
            raise UsageError("the same column is selected more than once")
        explicit = True
    else:
        picked = list(range(table.width))
        explicit = False

    names, arrays = [], []
    for j in picked:
        name = table.header[j]
        cells = [_cell(row, j) for row in table.rows]
        if not explicit and not all(
            c.strip().lower() in MISSING_TOKENS or _is_number(c) for c in cells
        ):
            log.info("skipping non-numeric column %r", name)
            continue
        values = [
            parse_cell(c, line, name, drop_missing) for c, line in zip(cells, table.line_numbers)
        ]
        names.append(name)
        arrays.append(np.array([np.nan if v is None else v for v in values], dtype=np.float64))
    return names, arrays


def _is_number(text):
    try:
        float(text.strip())
    except ValueError:
        return False
    return True
