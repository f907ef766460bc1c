"""Reading and writing results, lateral range curves and reference W tables.

Metadata rides along as ``#`` comment lines at the top of CSV files (and
under ``"metadata"`` in JSON); loaders skip it.
"""
from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, TextIO

from .experiment import DetectionData, Mode
from .objects import ParseError
from .sweep import LateralRangeCurve, SweepWidthResult

RESULTS_HEADER = ("object", "altitude_m", "visibility_km", "w_km",
                  "coverage_fraction", "mode", "seed", "rows")
LRC_HEADER = ("x_m", "detected", "opportunities", "fraction")
REFERENCE_HEADER = ("object", "altitude_m", "visibility_km", "w_km")

Key = tuple[str, int, float]


@dataclass(frozen=True)
class ResultRow:
    """One results line as read back from disk."""

    object: str
    altitude_m: int
    visibility_km: float
    w_km: float
    coverage_fraction: float
    mode: str
    seed: int
    rows: int

    @property
    def key(self) -> Key:
        return self.object, self.altitude_m, self.visibility_km


def _num(x: float) -> str:
    # repr round-trips exactly and drops the noise of fixed formats
    return repr(float(x))


def _as_row(r: SweepWidthResult | ResultRow) -> ResultRow:
    if isinstance(r, ResultRow):
        return r
    s = r.scenario
    return ResultRow(s.object.name, s.altitude_m, s.visibility_km, r.w_km,
                     r.coverage_fraction, str(r.mode), r.seed, r.rows)


def _meta_lines(metadata: Mapping | None) -> str:
    if not metadata:
        return ""
    return "# " + " ".join(f"{k}={v}" for k, v in metadata.items()) + "\n"


def _data_lines(source: TextIO | str):
    if isinstance(source, str):
        source = io.StringIO(source)
    for n, line in enumerate(source, start=1):
        if line.startswith("#") or not line.strip():
            continue
        yield n, line


def _csv_rows(source):
    """(line number, fields) pairs, metadata and blank lines dropped."""
    numbered = list(_data_lines(source))
    for (n, _), row in zip(numbered, csv.reader(line for _, line in numbered)):
        yield n, row


def _read_header(rows, required, what):
    try:
        line, header = next(rows)
    except StopIteration:
        return None
    header = [h.strip() for h in header]
    missing = [c for c in required if c not in header]
    if missing:
        raise ParseError(f"{what} header lacks column(s) {', '.join(missing)}", line)
    return {name: header.index(name) for name in required}, len(header)


def _field(row, cols, name, conv, line):
    text = row[cols[name]].strip()
    try:
        value = conv(text)
    except ValueError:
        raise ParseError(f"bad {name} value {text!r}", line) from None
    if isinstance(value, float) and not math.isfinite(value):
        raise ParseError(f"{name} must be finite, got {text!r}", line)
    return value


# ---- results -------------------------------------------------------------

def write_results_csv(results: Iterable[SweepWidthResult | ResultRow],
                      dest: TextIO | None = None, metadata: Mapping | None = None) -> str:
    buf = io.StringIO()
    buf.write(_meta_lines(metadata))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RESULTS_HEADER)
    for r in map(_as_row, results):
        w.writerow((r.object, r.altitude_m, _num(r.visibility_km), _num(r.w_km),
                    _num(r.coverage_fraction), r.mode, r.seed, r.rows))
    text = buf.getvalue()
    if dest is not None:
        dest.write(text)
    return text


def write_results_json(results: Iterable[SweepWidthResult | ResultRow],
                       dest: TextIO | None = None, metadata: Mapping | None = None) -> str:
    doc = {
        "metadata": dict(metadata or {}),
        "results": [
            {
                "object": r.object,
                "altitude_m": r.altitude_m,
                "visibility_km": r.visibility_km,
                "w_km": r.w_km,
                "coverage_fraction": r.coverage_fraction,
                "mode": r.mode,
                "seed": r.seed,
                "rows": r.rows,
            }
            for r in map(_as_row, results)
        ],
    }
    text = json.dumps(doc, indent=2) + "\n"
    if dest is not None:
        dest.write(text)
    return text


def _check_result(r: ResultRow, line):
    if r.w_km < 0:
        raise ParseError(f"w_km must be non-negative, got {r.w_km}", line)
    if not 0 <= r.coverage_fraction <= 1:
        raise ParseError(f"coverage_fraction outside [0, 1]: {r.coverage_fraction}", line)
    try:
        Mode(r.mode)
    except ValueError:
        raise ParseError(f"unknown mode {r.mode!r}", line) from None
    return r


def read_results(source: TextIO | str) -> list[ResultRow]:
    """Load a results file written by this package, CSV or JSON."""
    text = source if isinstance(source, str) else source.read()
    if text.lstrip().startswith("{"):
        return _read_results_json(text)
    rows = _csv_rows(text)
    head = _read_header(rows, RESULTS_HEADER, "results")
    if head is None:
        return []
    cols, width = head
    out = []
    for line, row in rows:
        if len(row) != width:
            raise ParseError(f"expected {width} fields, got {len(row)}", line)
        r = ResultRow(
            object=row[cols["object"]].strip(),
            altitude_m=_field(row, cols, "altitude_m", int, line),
            visibility_km=_field(row, cols, "visibility_km", float, line),
            w_km=_field(row, cols, "w_km", float, line),
            coverage_fraction=_field(row, cols, "coverage_fraction", float, line),
            mode=row[cols["mode"]].strip(),
            seed=_field(row, cols, "seed", int, line),
            rows=_field(row, cols, "rows", int, line),
        )
        out.append(_check_result(r, line))
    return out


def _read_results_json(text: str) -> list[ResultRow]:
    try:
        doc = json.loads(text)
        return [_check_result(ResultRow(
            object=str(d["object"]),
            altitude_m=int(d["altitude_m"]),
            visibility_km=float(d["visibility_km"]),
            w_km=float(d["w_km"]),
            coverage_fraction=float(d["coverage_fraction"]),
            mode=str(d["mode"]),
            seed=int(d["seed"]),
            rows=int(d["rows"]),
        ), i + 1) for i, d in enumerate(doc["results"])]
    except (ValueError, KeyError, TypeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed results JSON: {exc}") from None


# ---- detection data / lateral range curves --------------------------------

def write_lrc_csv(curve: LateralRangeCurve | DetectionData, dest: TextIO | None = None,
                  metadata: Mapping | None = None) -> str:
    """One row per column, ascending x. Columns never observed carry
    ``opportunities == 0`` (and fraction 0)."""
    if isinstance(curve, DetectionData):
        x, d, n = curve.x_m, curve.detected, curve.opportunities
        f = curve.fraction
    else:
        x, d, n, f = curve.x_m, curve.detected, curve.opportunities, curve.fraction
    buf = io.StringIO()
    buf.write(_meta_lines(metadata))
    buf.write(",".join(LRC_HEADER) + "\n")
    buf.writelines(f"{xi},{di},{ni},{_num(fi)}\n"
                   for xi, di, ni, fi in zip(x.tolist(), d.tolist(), n.tolist(), f.tolist()))
    text = buf.getvalue()
    if dest is not None:
        dest.write(text)
    return text


def read_detection_csv(source: TextIO | str) -> DetectionData:
    """Load an LRC / detection CSV; unobserved rows are dropped."""
    rows = _csv_rows(source)
    head = _read_header(rows, LRC_HEADER, "lateral range")
    if head is None:
        return DetectionData.from_mapping({})
    cols, width = head
    xs, ds, ns = [], [], []
    last = 0
    for line, row in rows:
        if len(row) != width:
            raise ParseError(f"expected {width} fields, got {len(row)}", line)
        x = _field(row, cols, "x_m", int, line)
        d = _field(row, cols, "detected", int, line)
        n = _field(row, cols, "opportunities", int, line)
        if x <= last:
            raise ParseError("x_m must be positive and strictly increasing", line)
        last = x
        if not 0 <= d <= max(n, 0):
            raise ParseError(f"detected {d} outside [0, opportunities={n}]", line)
        if n == 0:
            continue
        xs.append(x), ds.append(d), ns.append(n)
    return DetectionData(xs, ds, ns)


# ---- reference tables -----------------------------------------------------

def load_reference_table(source: TextIO | str,
                         known_objects: Iterable[str] | None = None) -> dict[Key, float]:
    """Parse an ``object,altitude_m,visibility_km,w_km`` reference table.

    Extra columns are ignored, so a results file loads as a reference too.
    Object names outside ``known_objects`` are kept but warned about.
    """
    rows = _csv_rows(source)
    head = _read_header(rows, REFERENCE_HEADER, "reference")
    table: dict[Key, float] = {}
    if head is None:
        warnings.warn("reference table is empty", stacklevel=2)
        return table
    cols, width = head
    known = set(known_objects) if known_objects is not None else None
    unknown = []
    for line, row in rows:
        if len(row) != width:
            raise ParseError(f"expected {width} fields, got {len(row)}", line)
        name = row[cols["object"]].strip()
        if not name:
            raise ParseError("empty object name", line)
        key = (name,
               _field(row, cols, "altitude_m", int, line),
               _field(row, cols, "visibility_km", float, line))
        w = _field(row, cols, "w_km", float, line)
        if not w > 0:
            raise ParseError(f"w_km must be positive, got {w}", line)
        if key in table:
            raise ParseError(f"duplicate entry for {key}", line)
        table[key] = w
        if known is not None and name not in known and name not in unknown:
            unknown.append(name)
    if not table:
        warnings.warn("reference table has no rows", stacklevel=2)
    if unknown:
        warnings.warn(f"reference table names unknown object(s): {', '.join(unknown)}",
                      stacklevel=2)
    return table
