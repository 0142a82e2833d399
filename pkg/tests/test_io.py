import math
import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spiralflow.flow import CurveSample
from spiralflow.io import atomic_write_text, curves_svg, dumps_json, graph_svg, read_table_csv, table_csv


def test_atomic_write_replaces(tmp_path):
    p = tmp_path / "a.txt"
    atomic_write_text(p, "one")
    atomic_write_text(p, "two")
    assert p.read_text() == "two"
    assert os.listdir(tmp_path) == ["a.txt"]


def test_atomic_write_leaves_no_partial_file(tmp_path, monkeypatch):
    p = tmp_path / "a.txt"
    atomic_write_text(p, "old")

    def boom(*a, **k):
        raise OSError("disk full")

    monkeypatch.setattr(os, "replace", boom)
    with pytest.raises(OSError):
        atomic_write_text(p, "new")
    assert p.read_text() == "old"
    assert os.listdir(tmp_path) == ["a.txt"]


def test_json_is_canonical():
    a = dumps_json({"b": 1.0, "a": [math.nan, np.float64(2.5)]})
    assert a == '{\n  "a": [\n    null,\n    2.5\n  ],\n  "b": 1.0\n}\n'


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64), min_size=1, max_size=20))
def test_table_round_trip(values):
    text = table_csv(["v", "w"], [values, values[::-1]])
    header, data = read_table_csv(text)
    assert header == ["v", "w"]
    assert data[:, 0].tolist() == [float(v) for v in values]
    assert table_csv(header, [data[:, 0], data[:, 1]]) == text


def test_svg_structure():
    xs = np.linspace(-1, 1, 5)
    s = CurveSample(0.5, xs, xs * (1 + 0.5j))
    svg = curves_svg([s])
    assert svg.startswith("<?xml") and svg.rstrip().endswith("</svg>")
    assert svg.count("<polyline") == 1
    assert 'marker-end="url(#arrow)"' in svg
    assert 'fill="none"' in svg
    assert curves_svg([s]) == svg


def test_svg_equal_aspect():
    xs = np.linspace(0, 1, 3)
    svg = curves_svg([CurveSample(1.0, xs, xs * 4 + 1j * xs)])
    head = svg.splitlines()[1]
    vb = [float(v) for v in head.split('viewBox="')[1].split('"')[0].split()]
    w = float(head.split('width="')[1].split('"')[0])
    h = float(head.split('height="')[1].split('"')[0])
    assert w / h == pytest.approx(vb[2] / vb[3], rel=1e-5)


def test_graph_svg():
    x = np.linspace(0, 1, 11)
    assert graph_svg(x, np.sin(x)).count("<polyline") == 1
