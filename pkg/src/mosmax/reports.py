"""Pass/fail records and their CSV / JSON serializations."""
from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from typing import Any

CSV_COLUMNS = ("name", "value", "tolerance", "passed", "iters")


@dataclass
class VerificationReport:
    """Outcome of checking one inequality or identity on a concrete instance.

    ``value`` is the measured slack (positive means the inequality holds with
    room to spare) unless the check documents otherwise.
    """

    name: str
    passed: bool
    value: float
    tolerance: float
    iters: int = 0
    skipped: bool = False
    details: dict[str, Any] = field(default_factory=dict)

    def to_row(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "value": _fmt(self.value),
            "tolerance": _fmt(self.tolerance),
            "passed": "skipped" if self.skipped else str(bool(self.passed)).lower(),
            "iters": int(self.iters),
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "verification",
            "name": self.name,
            "passed": bool(self.passed),
            "skipped": bool(self.skipped),
            "value": jsonable(self.value),
            "tolerance": jsonable(self.tolerance),
            "iters": int(self.iters),
            "details": jsonable(self.details),
        }


def _fmt(x) -> str:
    return repr(float(x))


def jsonable(obj):
    """Convert numpy scalars/arrays and non-finite floats into JSON-safe values."""
    import numpy as np

    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def rows_to_csv(rows, columns=CSV_COLUMNS) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


def atomic_write(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file in the same directory + rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
