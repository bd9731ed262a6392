"""Readers and writers for frequency tables, distribution specs and reports.

Frequency tables are CSV with the header ``class_lower,class_upper,count``
and an optional fourth column ``representative``. Distribution specs are
JSON objects ``{"values": [...], "probs": [...], "label": "..."}``. Reports
are written as CSV (one row per record) or JSON, with every float printed to
17 significant digits.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from dataclasses import dataclass
from typing import Optional, TextIO, Union

import numpy as np

from .asymptotics import AsymptoticReport
from .distribution import DiscreteDistribution, FrequencyRow, FrequencyTable, ValidationError
from .indices import ZengaDecomposition
from .influence import InfluenceProfile
from .montecarlo import StudyReport

FREQ_HEADER = ["class_lower", "class_upper", "count"]
STUDY_COLUMNS = ["size", "erm", "mse", "rmse", "sd_scaled", "sigma_analytic", "ks", "coverage"]


class ParseError(ValueError):
    """Malformed input file; the message names the offending row or field."""


def _text(source: Union[str, TextIO]) -> str:
    return source if isinstance(source, str) else source.read()


def fmt_float(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _num(text: str, row: int, name: str) -> float:
    t = text.strip()
    try:
        v = float(t)
    except ValueError:
        raise ParseError(f"row {row}: field '{name}' is not a number: {text!r}") from None
    if not math.isfinite(v):
        raise ParseError(f"row {row}: field '{name}' is not finite: {text!r}")
    return v


def parse_frequency_csv(source: Union[str, TextIO]) -> FrequencyTable:
    """Read a frequency table. Row numbers in errors count the header as row 1."""
    reader = csv.reader(io.StringIO(_text(source)))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise ParseError("empty file: missing header") from None
    if header not in (FREQ_HEADER, FREQ_HEADER + ["representative"]):
        raise ParseError(
            f"row 1: bad header {','.join(header)!r}; expected "
            "'class_lower,class_upper,count[,representative]'")
    width = len(header)
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not f.strip() for f in rec):
            continue
        if len(rec) != width:
            raise ParseError(f"row {lineno}: expected {width} fields, found {len(rec)}")
        lo = _num(rec[0], lineno, "class_lower")
        hi = _num(rec[1], lineno, "class_upper")
        ct = rec[2].strip()
        try:
            count = int(ct)
        except ValueError:
            raise ParseError(f"row {lineno}: field 'count' is not an integer: {rec[2]!r}") from None
        if count < 0:
            raise ParseError(f"row {lineno}: field 'count' is negative: {count}")
        rep = None
        if width == 4 and rec[3].strip():
            rep = _num(rec[3], lineno, "representative")
        rows.append(FrequencyRow(lo, hi, count, rep))
    try:
        return FrequencyTable(tuple(rows))
    except ValidationError as e:
        raise ParseError(str(e)) from None


def write_frequency_csv(table: FrequencyTable) -> str:
    with_rep = any(r.representative is not None for r in table.rows)
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(FREQ_HEADER + (["representative"] if with_rep else []))
    for r in table.rows:
        rec = [fmt_float(r.class_lower), fmt_float(r.class_upper), str(r.count)]
        if with_rep:
            rec.append("" if r.representative is None else fmt_float(r.representative))
        w.writerow(rec)
    return out.getvalue()


@dataclass
class DistSpec:
    values: list
    probs: list
    label: Optional[str] = None

    def to_distribution(self) -> DiscreteDistribution:
        return DiscreteDistribution(self.values, self.probs)

    @classmethod
    def from_distribution(cls, dist: DiscreteDistribution, label: Optional[str] = None):
        return cls(dist.values.tolist(), dist.probs.tolist(), label)


def parse_dist_spec(source: Union[str, TextIO]) -> DistSpec:
    try:
        doc = json.loads(_text(source))
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}: invalid JSON: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("distribution spec must be a JSON object")
    unknown = set(doc) - {"values", "probs", "label"}
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(sorted(unknown))}")
    arrays = {}
    for key in ("values", "probs"):
        if key not in doc:
            raise ParseError(f"missing field '{key}'")
        arr = doc[key]
        if not isinstance(arr, list):
            raise ParseError(f"field '{key}' must be an array")
        for i, v in enumerate(arr):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"field '{key}' entry {i}: not a number: {v!r}")
        arrays[key] = [float(v) for v in arr]
    if len(arrays["values"]) != len(arrays["probs"]):
        raise ParseError(
            f"length mismatch: {len(arrays['values'])} values, {len(arrays['probs'])} probs")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError("field 'label' must be a string")
    return DistSpec(arrays["values"], arrays["probs"], label)


def _json(obj) -> str:
    """JSON text with floats at 17 significant digits; NaN becomes null."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return _json(obj.tolist())
    if isinstance(obj, (bool, np.bool_)) or obj is None or isinstance(obj, str):
        return json.dumps(obj if not isinstance(obj, np.bool_) else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return "null" if not math.isfinite(obj) else fmt_float(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_dist_spec(spec: DistSpec) -> str:
    doc = {"values": spec.values, "probs": spec.probs}
    if spec.label is not None:
        doc["label"] = spec.label
    return _json(doc) + "\n"


def _table(report):
    """Column names and row tuples for the CSV form of a report."""
    if isinstance(report, InfluenceProfile):
        return ["x", "if_value"], list(zip(report.values, report.if_values))
    if isinstance(report, StudyReport):
        return STUDY_COLUMNS, [tuple(getattr(r, c) for c in STUDY_COLUMNS) for r in report.rows]
    if isinstance(report, ZengaDecomposition):
        cols = ["j", "weight", "lower_mean", "upper_mean", "ratio", "curve"]
        return cols, list(zip(report.j, report.weight, report.lower_mean,
                              report.upper_mean, report.ratio, report.curve))
    if isinstance(report, AsymptoticReport):
        cols = [f.name for f in dataclasses.fields(report)]
        return cols, [tuple(getattr(report, c) for c in cols)]
    raise TypeError(f"unsupported report type {type(report).__name__}")


def _document(report) -> dict:
    if isinstance(report, InfluenceProfile):
        return {"values": report.values, "probs": report.probs,
                "if_values": report.if_values, "if_variance": report.if_variance}
    if isinstance(report, StudyReport):
        return {"target": report.target,
                "rows": [dataclasses.asdict(r) for r in report.rows],
                "qq": report.qq, "kde": report.kde}
    if isinstance(report, ZengaDecomposition):
        cols, rows = _table(report)
        return {"total": report.total, "rows": [dict(zip(cols, r)) for r in rows]}
    if isinstance(report, AsymptoticReport):
        return dataclasses.asdict(report)
    raise TypeError(f"unsupported report type {type(report).__name__}")


def _cell(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return fmt_float(v)


def write_table(columns, rows) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return out.getvalue()


def write_report(report, fmt: str = "csv") -> str:
    """Serialize a report; ``fmt`` is ``"csv"`` or ``"json"``."""
    if fmt == "csv":
        return write_table(*_table(report))
    if fmt == "json":
        return _json(_document(report)) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def write_pairs(pairs, header=("x", "y")) -> str:
    return write_table(list(header), [tuple(r) for r in np.asarray(pairs)])


def read_report(source: Union[str, TextIO], fmt: str = "csv"):
    """Parse a report written by :func:`write_report`.

    CSV gives a list of dicts with numeric cells; JSON gives the document.
    """
    text = _text(source)
    if fmt == "json":
        return json.loads(text)
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    out = []
    for lineno, rec in enumerate(reader, start=2):
        if len(rec) != len(header):
            raise ParseError(f"row {lineno}: expected {len(header)} fields, found {len(rec)}")
        row = {}
        for name, cell in zip(header, rec):
            try:
                row[name] = int(cell)
            except ValueError:
                try:
                    row[name] = float(cell)
                except ValueError:
                    raise ParseError(f"row {lineno}: field '{name}' is not a number: {cell!r}") from None
        out.append(row)
    return out
