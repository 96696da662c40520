"""
Rendering of command reports as JSON, CSV or an indented human-readable block.
"""
import csv
import io
import json
from typing import Any, Dict, List, Optional

from config import OUTPUT_FORMATS


def to_pretty(data: Dict[str, Any], title: str = "report", indent: int = 0, skip_empty: bool = True) -> str:
    """
    Nested dict/list report as an indented outline.

    Example:
        {"experiment": "gap-prob", "params": {"n": 2}} ->
        report
            experiment: gap-prob
            params
                n: 2
    """
    if skip_empty:
        data = {k: v for k, v in data.items() if v is not None and (not isinstance(v, (dict, list)) or v)}

    pad = " " * indent
    inner = " " * (indent + 4)
    lines = [f"{pad}{title}"]
    for key, value in data.items():
        if isinstance(value, dict):
            lines.append(to_pretty(value, key, indent + 4, skip_empty))
        elif isinstance(value, (list, tuple)) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{inner}{key}")
            for i, item in enumerate(value, 1):
                lines.append(to_pretty(item, f"[{i}]", indent + 8, skip_empty))
        else:
            lines.append(f"{inner}{key}: {_scalar(value)}")
    return "\n".join(lines)


def _scalar(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    return str(value)


def _flatten(data: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            out[name] = json.dumps(value)
        else:
            out[name] = value
    return out


def to_csv(data: Dict[str, Any], rows: Optional[List[Dict[str, Any]]] = None) -> str:
    """
    One line per row, each followed by the flattened report fields, so the CSV carries every
    value of the JSON report. Without rows the report fields make a single line.

    Report columns whose names clash with a row column get a "report." prefix.
    """
    fields = _flatten(data)
    if not rows:
        table = [fields]
    else:
        table = []
        for row in rows:
            line = _flatten(row)
            table.append({**line, **{(f"report.{k}" if k in line else k): v for k, v in fields.items()}})
    header: List[str] = []
    for row in table:
        header.extend(k for k in row if k not in header)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(table)
    return buffer.getvalue()


def render(data: Dict[str, Any], fmt: str = "json", rows: Optional[List[Dict[str, Any]]] = None, title: str = "report") -> str:
    if fmt not in OUTPUT_FORMATS:
        raise ValueError(f"Unknown output format {fmt!r}; expected one of {OUTPUT_FORMATS}")
    if fmt == "json":
        return json.dumps(data, indent=2)
    if fmt == "csv":
        return to_csv(data, rows)
    return to_pretty(data, title)
