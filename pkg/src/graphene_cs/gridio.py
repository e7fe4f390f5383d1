"""Request and result containers for the CLI, plus the delimited writers.

CSV output uses LF line endings and repr() floats, which round-trip
exactly; JSON output wraps the same rows in an envelope carrying the
request context.  Identical requests therefore produce byte-identical
bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidRequestError


@dataclass(frozen=True)
class GridRequest:
    """A parsed CLI request; axis tuples are (lo, hi, count)."""

    command: str
    family: str = "one"
    b0: float = 1.0
    k: float = 0.0
    tol: float = 1e-15
    fmt: str = "csv"
    alpha: Optional[complex] = None
    re_axis: Optional[tuple] = None
    im_axis: Optional[tuple] = None
    x_axis: Optional[tuple] = None
    r_list: Optional[tuple] = None
    theta_list: Optional[tuple] = None
    output: Optional[str] = None
    plot: Optional[str] = None


@dataclass
class GridResult:
    """Rows of one report plus context for serialization and plotting."""

    command: str
    columns: tuple
    rows: list
    meta: dict = field(default_factory=dict)
    summaries: list = field(default_factory=list)


def parse_axis(text: str, what: str) -> tuple:
    """Parse a lo:hi:count axis; swept axes need count >= 2 and hi > lo."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidRequestError(f"{what} must look like lo:hi:count, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise InvalidRequestError(f"{what} must look like lo:hi:count, got {text!r}") from None
    if count < 2:
        raise InvalidRequestError(f"{what} needs at least 2 steps, got {count}")
    if not (hi > lo):
        raise InvalidRequestError(f"{what} needs hi > lo, got {text!r}")
    return (lo, hi, count)


def parse_float_list(text: str, what: str) -> tuple:
    values = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            values.append(float(chunk))
        except ValueError:
            raise InvalidRequestError(f"{what} must be comma-separated reals, got {text!r}") from None
    if not values:
        raise InvalidRequestError(f"{what} must not be empty")
    return tuple(values)


def axis_values(axis: tuple) -> np.ndarray:
    lo, hi, count = axis
    return np.linspace(lo, hi, count)


def format_cell(value) -> str:
    """Shortest round-trip text for one cell."""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_csv(result: GridResult, fh) -> None:
    fh.write(",".join(result.columns) + "\n")
    for row in result.rows:
        fh.write(",".join(format_cell(v) for v in row) + "\n")
    for row in result.summaries:
        fh.write(",".join(format_cell(v) for v in row) + "\n")


def _jsonify(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    return value


def write_json(result: GridResult, fh) -> None:
    envelope = {"command": result.command}
    envelope.update(_jsonify(result.meta))
    envelope["columns"] = list(result.columns)
    envelope["rows"] = [_jsonify(list(row)) for row in result.rows]
    if result.summaries:
        envelope["summaries"] = [_jsonify(list(row)) for row in result.summaries]
    json.dump(envelope, fh, indent=2)
    fh.write("\n")


def write_result(result: GridResult, fmt: str, fh) -> None:
    if fmt == "csv":
        write_csv(result, fh)
    elif fmt == "json":
        write_json(result, fh)
    else:
        raise InvalidRequestError(f"unknown format {fmt!r}")
