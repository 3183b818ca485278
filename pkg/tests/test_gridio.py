"""Grid and table serialization: byte-stable round trips and format guards."""

from __future__ import annotations

import numpy as np
import pytest

from pasts.gridio import (
    grid_csv_text,
    grid_from_json_dict,
    grid_json_dict,
    json_text,
    read_grid_csv,
    read_grid_json,
    read_json,
    read_table_csv,
    table_csv_text,
    write_grid_csv,
    write_grid_json,
    write_json,
    write_table_csv,
)
from pasts.kernel import StateParams
from pasts.wigner import wigner_grid


def _sample_grid():
    return wigner_grid(StateParams(nbar=0.5, r=0.3, m=1), nx=9, ny=7)


def test_grid_csv_round_trip_is_byte_stable(tmp_path) -> None:
    grid = _sample_grid()
    path = tmp_path / "grid.csv"
    write_grid_csv(path, grid)
    first = path.read_bytes()

    back = read_grid_csv(path)
    assert back.nx == grid.nx and back.ny == grid.ny
    np.testing.assert_array_equal(back.values, grid.values)
    assert grid_csv_text(back).encode() == first


def test_grid_json_round_trip_preserves_meta(tmp_path) -> None:
    grid = _sample_grid()
    path = tmp_path / "grid.json"
    write_grid_json(path, grid)
    back = read_grid_json(path)
    np.testing.assert_array_equal(back.values, grid.values)
    assert back.meta["kind"] == "wigner"
    assert back.meta["nbar"] == 0.5
    assert back.meta["m"] == 1
    assert (back.x_min, back.x_max) == (grid.x_min, grid.x_max)
    # a second pass through the dict form stays identical
    assert json_text(grid_json_dict(back)) == path.read_text()


def test_table_csv_round_trip_preserves_cell_types(tmp_path) -> None:
    header = ["r", "m", "q"]
    rows = [[0.0, 1, -0.5125], [0.01, 1, None], [1.5, 30, 0.25]]
    path = tmp_path / "table.csv"
    write_table_csv(path, header, rows)

    got_header, got_rows = read_table_csv(path)
    assert got_header == header
    assert got_rows == rows
    assert isinstance(got_rows[0][1], int)
    assert isinstance(got_rows[0][0], float)
    assert got_rows[1][2] is None
    assert table_csv_text(got_header, got_rows).encode() == path.read_bytes()


def test_json_write_read_round_trip(tmp_path) -> None:
    doc = {"kind": "report", "values": [1, 2.5, None], "nested": {"ok": True}}
    path = tmp_path / "doc.json"
    write_json(path, doc)
    assert read_json(path) == doc
    assert path.read_text().endswith("\n")


def test_table_csv_rejects_malformed_input(tmp_path) -> None:
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ValueError):
        read_table_csv(empty)

    ragged = tmp_path / "ragged.csv"
    ragged.write_text("a,b\r\n1,2\r\n3\r\n")
    with pytest.raises(ValueError):
        read_table_csv(ragged)


def test_grid_csv_rejects_wrong_layout(tmp_path) -> None:
    wrong_header = tmp_path / "header.csv"
    wrong_header.write_text("a,b,c\r\n0,0,1\r\n")
    with pytest.raises(ValueError):
        read_grid_csv(wrong_header)

    # last row breaks the row-major raster ordering
    broken = tmp_path / "raster.csv"
    broken.write_text(
        "x,y,w\r\n"
        "0.0,0.0,1.0\r\n"
        "1.0,0.0,2.0\r\n"
        "0.0,1.0,3.0\r\n"
        "0.5,1.0,4.0\r\n"
    )
    with pytest.raises(ValueError):
        read_grid_csv(broken)


def test_grid_from_json_dict_checks_shape() -> None:
    doc = grid_json_dict(_sample_grid())
    doc["shape"] = [3, 3]
    with pytest.raises(ValueError):
        grid_from_json_dict(doc)
