"""Reading spaces from disk and writing reports deterministically."""
from __future__ import annotations

import csv
import io as _io
import json
import math
import sys
from pathlib import Path
from typing import Any

from .ep_metric import EpMetricSpace, euclidean_space, format_dist, validate_ep_metric

FORMATS = ("json-matrix", "json-points", "csv")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class IoError(OSError):
    pass


def _read(path) -> str:
    try:
        if str(path) == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(str(exc)) from exc


def _entry(value) -> float:
    # negative values pass through so validation can name the failing axiom
    if isinstance(value, bool):
        raise ValueError(f"not a distance: {value!r}")
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    x = float(value)
    if math.isnan(x):
        raise ValueError("NaN is not a distance")
    return x


def _guess_format(path, text: str) -> str:
    if str(path).lower().endswith(".csv"):
        return "csv"
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return "json-matrix"  # let the real parse report where it broke
    return "json-points" if isinstance(data, dict) and "points" in data else "json-matrix"


def parse_space(text: str, fmt: str) -> EpMetricSpace:
    if fmt not in FORMATS:
        raise ParseError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if fmt == "csv":
        return _parse_csv(text)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object")
    if fmt == "json-points":
        return _parse_points(data)
    return _parse_matrix(data)


def _parse_matrix(data: dict) -> EpMetricSpace:
    if "matrix" not in data:
        raise ParseError('missing "matrix"')
    rows = data["matrix"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError('"matrix" must be a list of rows')
    labels = data.get("labels") or [str(i) for i in range(len(rows))]
    if len(labels) != len(rows):
        raise ParseError(f"{len(labels)} labels for {len(rows)} rows")
    try:
        matrix = [[_entry(v) for v in row] for row in rows]
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc
    return validate_ep_metric([str(x) for x in labels], matrix)


def _parse_points(data: dict) -> EpMetricSpace:
    metric = data.get("metric", "euclidean")
    if metric != "euclidean":
        raise ParseError(f"unsupported metric {metric!r}")
    pts = data.get("points")
    if not isinstance(pts, list) or not pts:
        raise ParseError('"points" must be a non-empty list')
    dims = {len(p) if isinstance(p, list) else -1 for p in pts}
    if len(dims) != 1 or -1 in dims:
        raise ParseError("points must be lists of equal length")
    try:
        coords = [[float(c) for c in p] for p in pts]
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc
    if not all(math.isfinite(c) for p in coords for c in p):
        raise ParseError("coordinates must be finite")
    labels = data.get("labels")
    return euclidean_space(coords, [str(x) for x in labels] if labels else None)


def _parse_csv(text: str) -> EpMetricSpace:
    rows = list(csv.reader(_io.StringIO(text)))
    rows = [(i + 1, r) for i, r in enumerate(rows) if any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty CSV", 1, 1)
    header = [c.strip() for c in rows[0][1]]
    # a leading empty header cell means each row starts with its label
    row_labels = header[0] == ""
    labels = header[1:] if row_labels else header
    body = rows[1:]
    if len(body) != len(labels):
        raise ParseError(f"{len(labels)} labels but {len(body)} data rows", rows[0][0], 1)
    matrix = []
    for (line, r), lab in zip(body, labels):
        cells = r[1:] if row_labels else r
        off = 2 if row_labels else 1
        if row_labels and r[0].strip() != lab:
            raise ParseError(f"row label {r[0].strip()!r} does not match column {lab!r}", line, 1)
        if len(cells) != len(labels):
            raise ParseError(f"expected {len(labels)} values, got {len(cells)}", line, 1)
        vals = []
        for j, c in enumerate(cells):
            try:
                vals.append(_entry(c.strip()))
            except ValueError as exc:
                raise ParseError(str(exc), line, j + off) from exc
        matrix.append(vals)
    return validate_ep_metric(labels, matrix)


def load_space(path, fmt: str | None = None) -> EpMetricSpace:
    text = _read(path)
    return parse_space(text, fmt or _guess_format(path, text))


# ------------------------------------------------------------------ output

def normalize(obj: Any) -> Any:
    """Recursively round floats to 12 significant digits, ``inf`` as a string."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return format_dist(obj)
    if hasattr(obj, "item") and not hasattr(obj, "__len__"):  # numpy scalar
        return normalize(obj.item())
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    if hasattr(obj, "to_json"):
        return normalize(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _records(report) -> list[dict]:
    if hasattr(report, "rows"):
        return report.rows()
    if isinstance(report, dict):
        return [report]
    return list(report)


def _cell(v) -> str:
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    if isinstance(v, (list, tuple)):
        return ",".join(_cell(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def dumps_report(report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(normalize(report), sort_keys=True, indent=2) + "\n"
    if fmt == "tsv":
        recs = [normalize(r) for r in _records(report)]
        if not recs:
            return ""
        cols = sorted({k for r in recs for k in r})
        lines = ["\t".join(cols)]
        lines += ["\t".join(_cell(r.get(c, "")) for c in cols) for r in recs]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(report, path=None, fmt: str = "json") -> str:
    """Write ``report`` to ``path`` (stdout for ``None`` or ``"-"``) and return the text."""
    text = dumps_report(report, fmt)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return text
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(str(exc)) from exc
    return text
