import json
from enum import Enum

import numpy as np
import pytest

from scenariorisk import MultiIndex
from scenariorisk.export import SCHEMA_PATH, csv_text, format_real, grid_csv, plain, resolve_output_path, to_json


class Colour(Enum):
    RED = "red"


def test_format_real():
    assert format_real(0.1) == "0.1"
    assert format_real(1 / 3) == "0.333333333333333"
    assert format_real(1.0) == "1"
    assert format_real(float("inf")) == "inf"


def test_plain_values():
    data = plain({"k": MultiIndex.of(1, 2), "beta": 1e-5, "ok": np.bool_(True), "n": np.int64(3),
                  "kind": Colour.RED, "risks": np.array([0.5, 0.25])})
    assert data == {"k": [1, 2], "beta": "1e-05", "ok": True, "n": 3, "kind": "red", "risks": ["0.5", "0.25"]}
    assert json.loads(to_json(data)) == data


def test_csv_rows_must_match_header():
    assert csv_text(["a", "b"], [(1, True), (0.5, "x")]) == "a,b\n1,1\n0.5,x\n"
    with pytest.raises(ValueError):
        csv_text(["a", "b"], [(1,)])


def test_grid_csv_header():
    points = np.array([[0.0, 0.5], [0.5, 0.0]])
    text = grid_csv(points, np.array([True, False]), np.array([0.25, -1.0]), member_box=np.array([True, True]))
    assert text.splitlines() == ["v1,v2,member,g_value,member_box", "0,0.5,1,0.25,1", "0.5,0,0,-1,1"]


def test_output_directory(monkeypatch, tmp_path):
    monkeypatch.setenv("SCENARIORISK_OUTPUT_DIR", str(tmp_path))
    assert resolve_output_path("a/b.csv") == tmp_path / "a" / "b.csv"
    assert resolve_output_path(tmp_path / "c.csv") == tmp_path / "c.csv"
    monkeypatch.delenv("SCENARIORISK_OUTPUT_DIR")
    assert str(resolve_output_path("x.json")) == "x.json"


def test_schema_is_valid_json():
    schema = json.loads(SCHEMA_PATH.read_text())
    assert {"region", "joint", "coverage"} <= set(schema["$defs"])


def test_shipped_csv_headers_match_writers():
    from scenariorisk.certificates import APRIORI_COLUMNS
    from scenariorisk.commands.size import SIZE_COLUMNS
    from scenariorisk.commands.table1 import TABLE1_COLUMNS

    headers = json.loads((SCHEMA_PATH.parent / "csv_headers.json").read_text(encoding="utf-8"))
    assert tuple(headers["apriori"]) == APRIORI_COLUMNS
    assert tuple(headers["table1"]) == TABLE1_COLUMNS
    assert tuple(headers["size"]) == SIZE_COLUMNS
    text = grid_csv(np.zeros((1, 2)), np.ones(1, dtype=bool), np.zeros(1), member_box=np.ones(1, dtype=bool))
    assert text.splitlines()[0].split(",") == headers["region-grid"]
