"""Reading and writing run outputs: JSON documents and flat CSV tables.

Floats are rounded to 12 significant digits on the way out, so output is
stable across runs and platforms and a document read back compares equal
to one written again.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any

FLOAT_FMT = "%.12g"


def round_floats(obj: Any) -> Any:
    """Recursively round floats to 12 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return obj
        return float(FLOAT_FMT % obj)
    if isinstance(obj, dict):
        return {str(k): round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return round_floats(obj.item())
    return obj


def dumps_json(doc: dict) -> str:
    return json.dumps(round_floats(doc), indent=2, sort_keys=False) + "\n"


def loads_json(text: str) -> dict:
    return json.loads(text)


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return FLOAT_FMT % value
    if isinstance(value, (list, tuple)):
        return json.dumps(round_floats(list(value)), separators=(",", ":"))
    return str(value)


def _parse_cell(text: str) -> Any:
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    if text.startswith("["):
        return json.loads(text)
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def write_table(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def read_table(text: str) -> list[dict[str, Any]]:
    reader = csv.DictReader(io.StringIO(text))
    return [{k: _parse_cell(v) for k, v in row.items()} for row in reader]


# -- per-document tables ----------------------------------------------------

PROFILE_COLUMNS = ["k", "dim_src", "dim_tgt", "norm", "iters"]
ANTISYM_COLUMNS = ["W", "W_prime", "W_frak", "A_cal", "A_tilde_prime", "A_check_prime"]


def profile_csv(doc: dict) -> str:
    return write_table(PROFILE_COLUMNS, [[r[c] for c in PROFILE_COLUMNS] for r in doc["rows"]])


def census_csv(doc: dict, ratios: list[dict[str, float]]) -> str:
    """Columns: k, P, A, E_0..E_M, A_tilde, A_check, [antisymmetric counts], ratios."""
    records = doc["records"]
    M = len(records[0]["E"]) - 1 if records else 0
    ratio_keys = sorted({k for r in ratios for k in r})
    header = ["k", "P", "A"] + [f"E_{m}" for m in range(M + 1)] + ["A_tilde", "A_check"]
    if doc.get("antisymmetric"):
        header += ANTISYM_COLUMNS
    header += ratio_keys
    rows = []
    for rec, rat in zip(records, ratios):
        row = [rec["k"], rec["P"], rec["A"], *rec["E"], rec["A_tilde"], rec["A_check"]]
        if doc.get("antisymmetric"):
            row += [rec[c] for c in ANTISYM_COLUMNS]
        row += [rat.get(k) for k in ratio_keys]
        rows.append(row)
    return write_table(header, rows)


def flatten(doc: Any, prefix: str = "") -> list[tuple[str, Any]]:
    """Dotted-path leaves of a nested document; lists of scalars stay whole."""
    out: list[tuple[str, Any]] = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            out += flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(doc, list) and any(isinstance(v, (dict, list)) for v in doc):
        for i, v in enumerate(doc):
            out += flatten(v, f"{prefix}[{i}]")
    else:
        out.append((prefix, doc))
    return out


def report_csv(doc: dict) -> str:
    return write_table(["key", "value"], [[k, v] for k, v in flatten(doc)])


def read_report_csv(text: str) -> dict[str, Any]:
    """Inverse of :func:`report_csv` up to nesting: maps dotted keys to values."""
    return {row["key"]: row["value"] for row in read_table(text)}


# -- golden comparison ------------------------------------------------------

def compare_documents(expected: Any, actual: Any, atol: float = 1e-9, path: str = "") -> list[str]:
    """Paths where ``actual`` departs from ``expected``; numbers compared within ``atol``."""
    if isinstance(expected, bool) or isinstance(actual, bool):
        return [] if expected == actual else [path or "."]
    if isinstance(expected, (int, float)) and isinstance(actual, (int, float)):
        if math.isnan(expected) and math.isnan(actual):
            return []
        return [] if abs(expected - actual) <= atol * max(1.0, abs(expected)) else [path or "."]
    if isinstance(expected, dict) and isinstance(actual, dict):
        if set(expected) != set(actual):
            return [f"{path}{{keys}}"]
        out = []
        for k in expected:
            out += compare_documents(expected[k], actual[k], atol, f"{path}.{k}")
        return out
    if isinstance(expected, list) and isinstance(actual, list):
        if len(expected) != len(actual):
            return [f"{path}[len]"]
        out = []
        for i, (a, b) in enumerate(zip(expected, actual)):
            out += compare_documents(a, b, atol, f"{path}[{i}]")
        return out
    return [] if expected == actual else [path or "."]
