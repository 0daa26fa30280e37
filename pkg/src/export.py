"""
Writers for everything the package emits: certificate and report JSON, region
grids, tables and scenario datasets as CSV.

Reals go to JSON as decimal strings with `JSON_DIGITS` significant digits and
multi-indices as integer arrays, so two runs with the same inputs produce the
same bytes.
"""
from .constants import JSON_DIGITS, OUTPUT_DIR_ENV
from .numerics import MultiIndex

from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import csv
import io
import json
import os
import sys

import numpy as np

__all__ = [
    "format_real", "plain", "to_json", "csv_text", "grid_csv", "resolve_output_path", "write_output", "SCHEMA_PATH",
]

SCHEMA_PATH = Path(__file__).parent / "data" / "certificate.schema.json"
"""JSON schema of certificates and coverage reports."""


def format_real(x: float) -> str:
    """A real as a string with `JSON_DIGITS` significant digits ("inf" and "nan" kept as words)."""
    return format(float(x), f".{JSON_DIGITS}g")


def plain(value: Any) -> Any:
    """Convert certificate fields to JSON-ready values (multi-indices as lists, reals as strings)."""
    if isinstance(value, MultiIndex):
        return value.to_list()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format_real(value)
    if isinstance(value, Mapping):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [plain(v) for v in value]
    return value


def to_json(obj: Any) -> str:
    """Serialize an object with a `to_dict()` method (or a plain structure) to indented JSON."""
    data = obj.to_dict() if hasattr(obj, "to_dict") else obj
    return json.dumps(data, indent=2) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_real(value)
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render rows under a header; every row must have as many cells as the header."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        row = list(row)
        if len(row) != len(header):
            raise ValueError(f"row has {len(row)} cells, header has {len(header)}")
        writer.writerow([_cell(c) for c in row])
    return buffer.getvalue()


def grid_csv(points: np.ndarray, member: np.ndarray, g_value: np.ndarray, **extra: np.ndarray) -> str:
    """
    A region grid as CSV with header `v1,...,vm,member,g_value[,extra...]`.

    Args:
        points (np.ndarray): Grid points, shape (n, m).
        member (np.ndarray): Membership flags, shape (n,).
        g_value (np.ndarray): Defining-function values, shape (n,).
        **extra (np.ndarray): Additional per-point columns, in keyword order.
    """
    m = points.shape[1]
    header = [f"v{i + 1}" for i in range(m)] + ["member", "g_value"] + list(extra)
    columns = [points[:, i] for i in range(m)] + [member, g_value] + list(extra.values())
    rows = zip(*(c.tolist() for c in columns))
    return csv_text(header, rows)


def resolve_output_path(out: str | os.PathLike) -> Path:
    """Relative paths are placed under `$SCENARIORISK_OUTPUT_DIR` when it is set."""
    path = Path(out)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def write_output(text: str, out: str | os.PathLike | None = None) -> Path | None:
    """
    Write a payload to `out`, or to stdout when `out` is None.

    Returns:
        Path | None: The file written, if any.
    """
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return None
    path = resolve_output_path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path
