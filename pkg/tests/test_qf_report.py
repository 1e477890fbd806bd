"""Tests for canonical report serialization."""

import math
from enum import Enum
from typing import NamedTuple

import numpy as np
import pytest

from constants import __version__
from matfield import Matrix
from qf_report import Report, format_float, to_jsonable, dumps_canonical, report_json, report_csv


class Color(str, Enum):
    RED = "red"


class Row(NamedTuple):
    delta: float
    ok: bool


# ---------------------------------------------------------
# Floats
# ---------------------------------------------------------

@pytest.mark.parametrize("value, text", [
    (1.0, "1.0"),
    (-3.0, "-3.0"),
    (0.5, "0.5"),
    (0.1, "0.10000000000000001"),
    (1e-20, "9.9999999999999995e-21"),
    (math.nan, "null"),
    (math.inf, "null"),
])
def test_format_float(value, text):
    assert format_float(value) == text


def test_format_float_round_trips():
    for value in (math.pi, 0.780597, 2.0 ** -40, 123456789.123):
        assert float(format_float(value)) == value


# ---------------------------------------------------------
# Conversion
# ---------------------------------------------------------

def test_to_jsonable_domain_values():
    assert to_jsonable(Color.RED) == "red"
    assert to_jsonable(frozenset({3, 1, 2})) == [1, 2, 3]
    assert to_jsonable(Row(0.1, True)) == {"delta": 0.1, "ok": True}
    assert to_jsonable(np.float64(0.25)) == 0.25
    assert to_jsonable(np.bool_(False)) is False
    assert to_jsonable({1: (2, 3)}) == {"1": [2, 3]}
    assert to_jsonable(1 - 2j) == [1.0, -2.0]


def test_to_jsonable_matrix_pairs():
    m = Matrix(np.array([[1, 1j], [0, 2]]))
    assert to_jsonable(m) == [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [2.0, 0.0]]


def test_to_jsonable_rejects_unknown_types():
    with pytest.raises(TypeError):
        to_jsonable(object())


# ---------------------------------------------------------
# Canonical text
# ---------------------------------------------------------

def test_dumps_canonical_layout():
    text = dumps_canonical({"z": None, "a": {"pair": [1.0, -0.5], "rows": [{"ok": True}]}, "m": []})
    assert text == (
        '{\n'
        '  "a": {\n'
        '    "pair": [\n'
        '      1.0,\n'
        '      -0.5\n'
        '    ],\n'
        '    "rows": [\n'
        '      {\n'
        '        "ok": true\n'
        '      }\n'
        '    ]\n'
        '  },\n'
        '  "m": [],\n'
        '  "z": null\n'
        '}\n'
    )


def test_dumps_canonical_writes_floats_with_17_digits():
    text = dumps_canonical({"x": 0.1, "nan": math.nan, "n": np.float64(2.0), "k": np.int64(3)})
    assert text == '{\n  "k": 3,\n  "n": 2.0,\n  "nan": null,\n  "x": 0.10000000000000001\n}\n'


def test_dumps_canonical_ignores_insertion_order():
    assert dumps_canonical({"a": 1, "b": 2}) == dumps_canonical({"b": 2, "a": 1})


# ---------------------------------------------------------
# Reports
# ---------------------------------------------------------

def test_report_dict_uses_pass_key():
    report = Report("scount", {"d": 2}, {"s": 4}, passed=True)
    data = report.to_dict()
    assert data["pass"] is True
    assert data["version"] == __version__
    assert data["seed"] is None
    assert '"pass": true' in report_json(report)


def test_report_csv():
    rows = [{"delta": 0.3, "ok": True, "note": None}, {"delta": 0.1, "ok": False, "note": "x"}]
    report = Report("continuity", results={"rows": rows})
    assert report_csv(report) == "delta,ok,note\n0.29999999999999999,true,\n0.10000000000000001,false,x\n"


def test_report_csv_without_table_is_empty():
    assert report_csv(Report("tomography-demo", results={"ok": True})) == ""
