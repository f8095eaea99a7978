"""Result records and their CSV / JSON / summary serialisation."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

FIXED_HEAD = ("suite", "case_id")
FIXED_TAIL = ("measured", "bound", "margin", "pass", "wall_ms")


@dataclass
class ResultRecord:
    suite: str
    case_id: str
    params: dict
    measured: float
    bound: float
    margin: float
    passed: bool
    wall_ms: float = 0.0


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    try:
        return format(float(v), ".17g")
    except (TypeError, ValueError):
        return str(v)


def param_columns(records) -> list[str]:
    cols: list[str] = []
    for r in records:
        for k in r.params:
            if k not in cols:
                cols.append(k)
    return cols


def header(records) -> list[str]:
    return [*FIXED_HEAD, *param_columns(records), *FIXED_TAIL]


def record_row(r: ResultRecord, cols) -> dict:
    row = {"suite": r.suite, "case_id": r.case_id}
    row.update({c: r.params.get(c) for c in cols})
    row.update({"measured": r.measured, "bound": r.bound, "margin": r.margin, "pass": r.passed,
                "wall_ms": r.wall_ms})
    return row


def sort_records(records) -> list[ResultRecord]:
    return sorted(records, key=lambda r: r.case_id)


def write_csv(records, path) -> Path:
    records = sort_records(records)
    cols = param_columns(records)
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header(records))
        for r in records:
            w.writerow([_fmt(v) for v in record_row(r, cols).values()])
    return path


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return _fmt(v)
    if isinstance(v, tuple):
        return list(v)
    return v


def write_json(records, path) -> Path:
    records = sort_records(records)
    cols = param_columns(records)
    rows = [{k: _json_value(v) for k, v in record_row(r, cols).items()} for r in records]
    path = Path(path)
    # repr of a Python float round-trips exactly, matching the CSV's 17 digits
    path.write_text(json.dumps(rows, indent=1, default=lambda o: o.item()) + "\n")
    return path


def read_csv(path) -> list[dict]:
    """Parse an emitted CSV; numeric fields come back as floats, ``pass`` as bool."""
    out = []
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            parsed = {}
            for k, v in row.items():
                if k == "pass":
                    parsed[k] = v == "true"
                elif k in ("suite", "case_id"):
                    parsed[k] = v
                else:
                    try:
                        parsed[k] = float(v)
                    except ValueError:
                        parsed[k] = v
            out.append(parsed)
    return out


def summary_text(suite: str, records) -> str:
    records = sort_records(records)
    failed = [r for r in records if not r.passed]
    lines = [f"suite {suite}: {len(records)} records, {len(records) - len(failed)} passed, {len(failed)} failed"]
    if records:
        worst = min(records, key=lambda r: r.margin if not math.isnan(r.margin) else -math.inf)
        lines.append(f"smallest margin: {worst.margin:.6g} ({worst.case_id})")
        lines.append(f"total wall time: {sum(r.wall_ms for r in records) / 1000:.3f} s")
    for r in failed:
        lines.append(f"FAIL {r.case_id}: measured={r.measured:.6g} bound={r.bound:.6g} margin={r.margin:.6g}")
    return "\n".join(lines) + "\n"


def emit_report(suite: str, records, out_dir, fmt: str = "csv") -> list[Path]:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from None
    if fmt == "csv":
        data = write_csv(records, out / f"{suite}.csv")
    elif fmt == "json":
        data = write_json(records, out / f"{suite}.json")
    else:
        raise ValueError(f"unknown format {fmt!r}")
    summ = out / f"{suite}_summary.txt"
    summ.write_text(summary_text(suite, records))
    return [data, summ]
