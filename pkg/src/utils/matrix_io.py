import json
import math
import os
import re
from typing import Any, List, Union

from config import SYMMETRY_TOL, logger
from models.symmetric_matrix import SymmetricMatrix
from utils.errors import MatrixFormatError


def clean_matrix_text(text: str) -> str:
    """Strip BOM, comments and trailing commas before parsing."""
    text = text.replace("\ufeff", "")
    text = re.sub(r"#.*?$|//.*?$", "", text, flags=re.MULTILINE)
    text = re.sub(r",(\s*[\}\]])", r"\1", text)
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    return text.strip()


def _rows_from_json(payload: Any) -> List[List[float]]:
    if isinstance(payload, dict):
        if "rows" not in payload:
            raise MatrixFormatError("Matrix JSON object needs a 'rows' field")
        rows = payload["rows"]
        declared = payload.get("n")
        if declared is not None and declared != len(rows):
            raise MatrixFormatError(f"Declared n={declared} but got {len(rows)} rows")
        return rows
    if isinstance(payload, list):
        return payload
    raise MatrixFormatError(f"Unsupported matrix JSON of type {type(payload).__name__}")


def _rows_from_plain_text(text: str) -> List[List[float]]:
    lines = [line.split() for line in text.split("\n") if line.strip()]
    if not lines or len(lines[0]) != 1:
        raise MatrixFormatError("Plain-text matrix must start with a line holding n")
    try:
        n = int(lines[0][0])
    except ValueError as e:
        raise MatrixFormatError(f"Invalid dimension line: {lines[0][0]!r}") from e
    if len(lines) - 1 != n:
        raise MatrixFormatError(f"Expected {n} rows, got {len(lines) - 1}")
    return lines[1:]


def validate_rows(rows: Any) -> SymmetricMatrix:
    """Square, finite, symmetric within SYMMETRY_TOL relative to the largest entry."""
    if not isinstance(rows, list) or not rows:
        raise MatrixFormatError("Matrix must be a non-empty list of rows")
    n = len(rows)
    try:
        values = [[float(x) for x in row] for row in rows]
    except (TypeError, ValueError) as e:
        raise MatrixFormatError(f"Non-numeric matrix entry: {e}") from e
    if any(len(row) != n for row in values):
        raise MatrixFormatError(f"Matrix is not square ({n} rows, row lengths {[len(r) for r in values]})")
    if any(not math.isfinite(x) for row in values for x in row):
        raise MatrixFormatError("Matrix entries must be finite")
    scale = max(1.0, max(abs(x) for row in values for x in row))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i][j] - values[j][i]) > SYMMETRY_TOL * scale:
                raise MatrixFormatError(f"Matrix is not symmetric at ({i + 1},{j + 1}): {values[i][j]} != {values[j][i]}")
    return SymmetricMatrix.from_rows(values)


def parse_matrix(text: str) -> SymmetricMatrix:
    """Parse JSON ({"n", "rows"} or bare rows) or the plain-text format."""
    cleaned = clean_matrix_text(text)
    if not cleaned:
        raise MatrixFormatError("Empty matrix input")
    if cleaned[0] in "[{":
        try:
            payload = json.loads(cleaned)
        except json.JSONDecodeError as e:
            raise MatrixFormatError(f"Invalid matrix JSON: {e}") from e
        rows = _rows_from_json(payload)
    else:
        rows = _rows_from_plain_text(cleaned)
    return validate_rows(rows)


def load_matrix(source: Union[str, os.PathLike]) -> SymmetricMatrix:
    """Load from a file path, or parse the argument itself when it is not a file."""
    path = os.fspath(source)
    if os.path.isfile(path):
        logger.debug(f"Reading matrix from {path}")
        with open(path, "r", encoding="utf-8") as f:
            return parse_matrix(f.read())
    return parse_matrix(path)
