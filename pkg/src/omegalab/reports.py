"""Report rendering: exact numbers only, stable ordering, three formats.

Rows are mappings from column name to already-rendered string values.
Numbers are rendered as "num/den" fractions or plain integers -- never
decimals -- with "inf" for infinite widths and "degenerate" where a
distribution has no usable weights.  Identical inputs produce identical
bytes in every format.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .bits import Dyadic, format_exact

INF = "inf"
DEGENERATE = "degenerate"

FORMATS = ("csv", "json", "text")


class UnknownFormatError(ValueError):
    pass


def render_value(value) -> str:
    """Canonical cell rendering for report tables."""
    if value is None:
        return INF
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (Dyadic, Fraction)):
        return format_exact(value)
    if isinstance(value, int):
        return str(value)
    return str(value)


def emit_report(rows: list[dict[str, str]], columns: list[str], fmt: str) -> str:
    """Render rows under a fixed column order; empty input keeps the header."""
    if fmt not in FORMATS:
        raise UnknownFormatError(f"unknown format {fmt!r} (have {', '.join(FORMATS)})")
    for row in rows:
        missing = [c for c in columns if c not in row]
        if missing:
            raise ValueError(f"row missing columns {missing}: {row}")
    if fmt == "csv":
        lines = [",".join(columns)]
        for row in rows:
            cells = [row[c] for c in columns]
            for cell in cells:
                if "," in cell or "\n" in cell:
                    raise ValueError(f"cell not CSV-safe: {cell!r}")
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {"columns": columns, "rows": [{c: row[c] for c in columns} for row in rows]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    widths = [
        max(len(c), max((len(row[c]) for row in rows), default=0)) for c in columns
    ]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(row[c].ljust(w) for c, w in zip(columns, widths)).rstrip())
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> tuple[list[str], list[dict[str, str]]]:
    """Inverse of emit_report for the json format."""
    doc = json.loads(text)
    return list(doc["columns"]), [dict(row) for row in doc["rows"]]


def provenance_flag(exact: bool) -> str:
    return "exact" if exact else "budget-stable"


def optional_int(value: Optional[int]) -> str:
    return INF if value is None else str(value)
