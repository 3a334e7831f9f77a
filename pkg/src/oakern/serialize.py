"""Deterministic serialization helpers.

All floats are written with 17 significant digits, which round-trips any
binary64 value exactly, so piping artifacts between commands never loses
precision and identical inputs always produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .errors import InputError


def format_float(x: float) -> str:
    """Render a finite float with 17 significant digits."""
    x = float(x)
    if not math.isfinite(x):
        raise InputError(f"cannot serialize non-finite value {x!r}")
    return format(x, ".17g")


def dumps_json(obj: Any, indent: int = 2) -> str:
    """Serialize nested dict/list/scalar data to JSON text.

    Unlike :func:`json.dumps` this pins float formatting to 17 significant
    digits. Dict keys are emitted in insertion order; callers build their
    documents in a fixed order, so output is byte-stable.
    """
    pieces: list[str] = []
    _write(obj, pieces, indent, 0)
    pieces.append("\n")
    return "".join(pieces)


def _write(obj: Any, out: list[str], indent: int, level: int) -> None:
    if isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif obj is None:
        out.append("null")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        _write_container(obj.items(), out, indent, level, "{", "}", keyed=True)
    elif isinstance(obj, (list, tuple)):
        _write_container(obj, out, indent, level, "[", "]", keyed=False)
    else:
        raise TypeError(f"unsupported JSON value of type {type(obj).__name__}")


def _write_container(items, out, indent, level, open_ch, close_ch, keyed):
    items = list(items)
    if not items:
        out.append(open_ch + close_ch)
        return
    pad = " " * (indent * (level + 1))
    out.append(open_ch)
    for pos, item in enumerate(items):
        out.append(",\n" if pos else "\n")
        out.append(pad)
        if keyed:
            key, value = item
            if not isinstance(key, str):
                raise TypeError("JSON object keys must be strings")
            out.append(json.dumps(key))
            out.append(": ")
            _write(value, out, indent, level + 1)
        else:
            _write(item, out, indent, level + 1)
    out.append("\n" + " " * (indent * level) + close_ch)


def loads_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def matrix_to_csv(values) -> str:
    """Row-major, header-free CSV with 17-significant-digit cells."""
    lines = [",".join(format_float(x) for x in row) for row in values]
    return "\n".join(lines) + "\n"


def matrix_from_csv(text: str) -> list[list[float]]:
    rows: list[list[float]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([float(cell) for cell in line.split(",")])
        except ValueError as exc:
            raise InputError(f"bad CSV cell on line {lineno}: {exc}") from exc
    if not rows:
        raise InputError("empty CSV matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError("ragged CSV matrix")
    return rows
