"""Model-versus-reference W table comparison."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping, TextIO

from .sweep import SweepWidthResult
from .objects import ParseError
from .tables import Key, ResultRow, _as_row, _csv_rows, _num

CELL_HEADER = ("object", "altitude_m", "visibility_km", "model_w_km",
               "reference_w_km", "abs_error_km", "ratio")


@dataclass(frozen=True)
class CellComparison:
    object: str
    altitude_m: int
    visibility_km: float
    model_w_km: float
    reference_w_km: float

    @property
    def abs_error_km(self) -> float:
        return abs(self.model_w_km - self.reference_w_km)

    @property
    def ratio(self) -> float:
        return self.model_w_km / self.reference_w_km

    @property
    def abs_percentage_error(self) -> float:
        return 100.0 * self.abs_error_km / self.reference_w_km


@dataclass(frozen=True)
class ComparisonReport:
    cells: list[CellComparison]
    missing_in_reference: list[Key] = field(default_factory=list)
    missing_in_model: list[Key] = field(default_factory=list)

    @property
    def compared(self) -> int:
        return len(self.cells)

    @property
    def mape(self) -> float:
        """Mean absolute percentage error against the reference, in percent.
        NaN when no cell was compared."""
        if not self.cells:
            return math.nan
        return math.fsum(c.abs_percentage_error for c in self.cells) / len(self.cells)

    @property
    def min_ratio(self) -> float:
        return min((c.ratio for c in self.cells), default=math.nan)

    @property
    def max_ratio(self) -> float:
        return max((c.ratio for c in self.cells), default=math.nan)

    def summary(self) -> dict:
        return {
            "cells_compared": self.compared,
            "missing_in_reference": len(self.missing_in_reference),
            "missing_in_model": len(self.missing_in_model),
            "mape_percent": self.mape,
            "min_ratio": self.min_ratio,
            "max_ratio": self.max_ratio,
        }


def compare_tables(model: Iterable[SweepWidthResult | ResultRow] | Mapping[Key, float],
                   reference: Mapping[Key, float]) -> ComparisonReport:
    """Join model and reference W on (object, altitude, visibility).

    Keys present on one side only are listed, never filled in.
    """
    if isinstance(model, Mapping):
        model_w = dict(model)
    else:
        model_w = {r.key: r.w_km for r in map(_as_row, model)}
    cells = [CellComparison(k[0], k[1], k[2], w, reference[k])
             for k, w in model_w.items() if k in reference]
    return ComparisonReport(
        cells=cells,
        missing_in_reference=[k for k in model_w if k not in reference],
        missing_in_model=[k for k in reference if k not in model_w],
    )


def write_report_csv(report: ComparisonReport, dest: TextIO | None = None) -> str:
    buf = io.StringIO()
    summary = report.summary()
    buf.write("# " + " ".join(f"{k}={v}" for k, v in summary.items()) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CELL_HEADER)
    for c in report.cells:
        w.writerow((c.object, c.altitude_m, _num(c.visibility_km), _num(c.model_w_km),
                    _num(c.reference_w_km), _num(c.abs_error_km), _num(c.ratio)))
    text = buf.getvalue()
    if dest is not None:
        dest.write(text)
    return text


def write_report_json(report: ComparisonReport, dest: TextIO | None = None) -> str:
    def cell(c):
        return {**asdict(c), "abs_error_km": c.abs_error_km, "ratio": c.ratio}

    summary = {k: (None if isinstance(v, float) and math.isnan(v) else v)
               for k, v in report.summary().items()}
    doc = {
        "summary": summary,
        "cells": [cell(c) for c in report.cells],
        "missing_in_reference": [list(k) for k in report.missing_in_reference],
        "missing_in_model": [list(k) for k in report.missing_in_model],
    }
    text = json.dumps(doc, indent=2) + "\n"
    if dest is not None:
        dest.write(text)
    return text


def read_report_csv(source: TextIO | str) -> ComparisonReport:
    """Load the per-cell rows of a CSV report.

    Missing-key lists are not stored in the CSV form, only their counts.
    """
    cells = []
    for line, row in _csv_rows(source):
        if tuple(row) == CELL_HEADER:
            continue
        if len(row) != len(CELL_HEADER):
            raise ParseError(f"expected {len(CELL_HEADER)} fields, got {len(row)}", line)
        try:
            cells.append(CellComparison(row[0], int(row[1]), float(row[2]),
                                        float(row[3]), float(row[4])))
        except ValueError:
            raise ParseError("malformed report row", line) from None
    return ComparisonReport(cells)
