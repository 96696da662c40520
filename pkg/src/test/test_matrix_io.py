"""
Matrix input parsing and report rendering.
"""
import json
import os
import sys
import tempfile

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.symmetric_matrix import SymmetricMatrix
from utils.errors import MatrixFormatError
from utils.matrix_io import clean_matrix_text, load_matrix, parse_matrix
from utils.report_format import render, to_csv, to_pretty

EXPECTED = SymmetricMatrix.from_rows([[1, 2], [2, 3]])


def test_parse_formats():
    assert parse_matrix('{"n": 2, "rows": [[1, 2], [2, 3]]}') == EXPECTED
    assert parse_matrix("[[1, 2], [2, 3]]") == EXPECTED
    assert parse_matrix("2\n1 2\n2 3\n") == EXPECTED
    assert parse_matrix("\ufeff[[1, 2], [2, 3],]  // trailing comma\n") == EXPECTED
    assert parse_matrix("# a comment line\n2\n1 2\n2 3") == EXPECTED
    print("✓ JSON, bare rows and plain text parse to the same matrix")


def test_clean_matrix_text():
    assert clean_matrix_text("\ufeff[1, 2,]\r\n") == "[1, 2]"
    assert clean_matrix_text("[[1]] # note") == "[[1]]"


def test_rejected_inputs():
    bad_inputs = [
        "",
        "[[1, 2], [3, 4]]",
        "[[1, 2, 3], [2, 3, 4]]",
        '[[1, "x"], ["x", 1]]',
        '{"n": 3, "rows": [[1, 0], [0, 1]]}',
        '{"matrix": [[1]]}',
        "[[NaN]]",
        "3\n1 0\n0 1",
        "[[1, 2], [2, 3]",
        "[]",
    ]
    for text in bad_inputs:
        try:
            parse_matrix(text)
            raise AssertionError(f"{text!r} must be rejected")
        except MatrixFormatError:
            pass
    # tiny asymmetry below the relative tolerance is accepted
    assert parse_matrix("[[1e6, 2], [2.0000000000001, 3]]").n == 2


def test_load_matrix_from_file():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "a.json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump(EXPECTED.to_json(), f, indent=2)
        assert load_matrix(path) == EXPECTED
    assert load_matrix("[[1, 2], [2, 3]]") == EXPECTED
    assert EXPECTED.to_json() == {"n": 2, "rows": [[1.0, 2.0], [2.0, 3.0]]}


def test_render_formats():
    report = {"experiment": "gap-prob", "params": {"n": 2, "eps": 0.1}, "estimate": 0.00125, "extras": {}}
    assert json.loads(render(report, "json")) == report

    lines = to_csv(report).strip().split("\n")
    assert lines[0] == "experiment,params.n,params.eps,estimate"
    assert lines[1] == "gap-prob,2,0.1,0.00125"
    rows = [{"trial": 0, "value": 3}, {"trial": 1, "value": None}]
    assert to_csv(report, rows) == (
        "trial,value,experiment,params.n,params.eps,estimate\n0,3,gap-prob,2,0.1,0.00125\n1,,gap-prob,2,0.1,0.00125\n"
    )
    # a row column shadowing a report field pushes the report value under "report."
    clash = to_csv({"estimate": 0.5, "n": 2}, [{"estimate": 1, "k": 3}]).strip().split("\n")
    assert clash == ["estimate,k,report.estimate,n", "1,3,0.5,2"]

    pretty = to_pretty(report, "gap-prob")
    assert pretty.split("\n")[:3] == ["gap-prob", "    experiment: gap-prob", "    params"]
    assert "extras" not in pretty
    try:
        render(report, "xml")
        raise AssertionError("unknown formats must be rejected")
    except ValueError:
        pass
    print("✓ json, csv and pretty rendering")


if __name__ == "__main__":
    test_parse_formats()
    test_clean_matrix_text()
    test_rejected_inputs()
    test_load_matrix_from_file()
    test_render_formats()
    print("\n✅ All matrix I/O tests passed!")
