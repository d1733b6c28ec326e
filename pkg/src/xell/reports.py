"""Verification report records."""

import csv
import io
import json
import math
from typing import Any, Dict, Iterable, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field


class CheckReport(BaseModel):
    """Outcome of one verification check; passes iff metric <= tolerance."""

    model_config = ConfigDict(frozen=True)

    check: str
    params: Dict[str, Any]
    metric: float
    tolerance: float
    max_error: Optional[float] = None
    rms_error: Optional[float] = None
    levels: List[float] = Field(default_factory=list)
    values: List[float] = Field(default_factory=list)
    slope: Optional[float] = None
    details: Dict[str, Any] = Field(default_factory=dict)
    error: Optional[str] = None

    @computed_field(alias="pass")
    @property
    def passed(self) -> bool:
        return math.isfinite(self.metric) and self.metric <= self.tolerance

    def sort_key(self):
        return (self.check, json.dumps(self.params, sort_keys=True))

    def record(self) -> Dict[str, Any]:
        """JSON-ready mapping with non-finite numbers replaced by null."""
        return _finite(self.model_dump(by_alias=True))


class Summary(BaseModel):
    total: int
    passed: int
    failed: int
    failed_checks: List[str] = Field(default_factory=list)


def summarize(reports: Iterable[CheckReport]) -> Summary:
    reports = list(reports)
    failed = [r for r in reports if not r.passed]
    return Summary(
        total=len(reports),
        passed=len(reports) - len(failed),
        failed=len(failed),
        failed_checks=sorted({r.check for r in failed}),
    )


def _finite(value):
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in value]
    return value


def format_number(value) -> str:
    """17 significant digits; round-trips every double exactly."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _json_text(value) -> str:
    """JSON with sorted keys and floats at 17 significant digits."""
    if isinstance(value, float):
        if not math.isfinite(value):
            return "null"
        text = format(value, ".17g")
        return text if any(c in text for c in ".e") else text + ".0"
    if isinstance(value, dict):
        items = sorted(value.items(), key=lambda kv: str(kv[0]))
        return "{" + ", ".join(f"{json.dumps(str(k), ensure_ascii=False)}: {_json_text(v)}" for k, v in items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_text(v) for v in value) + "]"
    return json.dumps(value, ensure_ascii=False)


def to_json_line(record: Dict[str, Any]) -> str:
    return _json_text(record)


CSV_COLUMNS = ["check", "params", "metric", "tolerance", "pass", "max_error", "rms_error", "slope", "error"]


def to_csv(rows: Iterable[Dict[str, Any]], columns: List[str]) -> str:
    """CSV with header row and LF line endings; nested values are JSON-encoded."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        cells = []
        for column in columns:
            value = row.get(column)
            if isinstance(value, (dict, list)):
                cells.append(_json_text(value))
            else:
                cells.append(format_number(value))
        writer.writerow(cells)
    return buffer.getvalue()
