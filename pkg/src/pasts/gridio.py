"""Deterministic file formats for grids, curves, and reports.

CSV output follows RFC 4180 (header row, CRLF line endings) and writes
doubles as shortest round-trip decimal text, so parsing a file and
re-emitting it reproduces identical bytes.  JSON output is UTF-8 with
stable key order and embeds enough metadata to be self-describing.
Integer-valued columns stay integers through a round trip; missing
values are empty CSV fields and JSON nulls.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence

import numpy as np

from .wigner import MASS_CONVENTION, PhaseGrid

_PARAM_KEYS = ("nbar", "r", "beta_q", "beta_p", "m")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _parse_cell(text: str):
    if text == "":
        return None
    try:
        return int(text)
    except ValueError:
        return float(text)


def json_text(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def write_json(path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(json_text(doc))


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def table_csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def write_table_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(table_csv_text(header, rows))


def read_table_csv(path) -> tuple[list[str], list[list]]:
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty CSV file") from None
        rows = [[_parse_cell(cell) for cell in row] for row in reader]
    width = len(header)
    for row in rows:
        if len(row) != width:
            raise ValueError(f"{path}: ragged CSV row {row}")
    return header, rows


def grid_csv_text(grid: PhaseGrid) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["x", "y", "w"])
    xs, ys = grid.xs(), grid.ys()
    for iy in range(grid.ny):
        y_cell = _cell(ys[iy])
        for ix in range(grid.nx):
            writer.writerow([_cell(xs[ix]), y_cell, _cell(grid.values[iy, ix])])
    return buf.getvalue()


def write_grid_csv(path, grid: PhaseGrid) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(grid_csv_text(grid))


def read_grid_csv(path) -> PhaseGrid:
    header, rows = read_table_csv(path)
    if header != ["x", "y", "w"]:
        raise ValueError(f"{path}: expected header x,y,w, got {header}")
    if not rows:
        raise ValueError(f"{path}: no grid rows")
    data = np.array(rows, dtype=np.float64)
    y_first = data[0, 1]
    nx = int(np.argmax(data[:, 1] != y_first)) or data.shape[0]
    if data.shape[0] % nx:
        raise ValueError(f"{path}: row count {data.shape[0]} not a multiple of {nx}")
    ny = data.shape[0] // nx
    xs = data[:nx, 0]
    ys = data[::nx, 1]
    if not np.array_equal(data[:, 0].reshape(ny, nx), np.broadcast_to(xs, (ny, nx))):
        raise ValueError(f"{path}: x coordinates are not a consistent raster")
    if not np.array_equal(data[:, 1].reshape(ny, nx), np.broadcast_to(ys[:, None], (ny, nx))):
        raise ValueError(f"{path}: y coordinates are not a consistent raster")
    return PhaseGrid(
        x_min=float(xs[0]), x_max=float(xs[-1]),
        y_min=float(ys[0]), y_max=float(ys[-1]),
        nx=nx, ny=ny,
        values=data[:, 2].reshape(ny, nx),
        meta={},
    )


def grid_json_dict(grid: PhaseGrid) -> dict:
    meta = grid.meta
    doc: dict = {
        "kind": meta.get("kind", "wigner"),
        "convention": meta.get("convention", MASS_CONVENTION),
    }
    if all(key in meta for key in _PARAM_KEYS):
        doc["params"] = {
            "nbar": float(meta["nbar"]),
            "r": float(meta["r"]),
            "beta_q": float(meta["beta_q"]),
            "beta_p": float(meta["beta_p"]),
            "m": int(meta["m"]),
        }
    if "kt" in meta:
        doc["kt"] = float(meta["kt"])
    doc["window"] = [grid.x_min, grid.x_max, grid.y_min, grid.y_max]
    doc["shape"] = [grid.ny, grid.nx]
    doc["values"] = [[float(v) for v in row] for row in grid.values]
    return doc


def write_grid_json(path, grid: PhaseGrid) -> None:
    write_json(path, grid_json_dict(grid))


def grid_from_json_dict(doc: dict) -> PhaseGrid:
    meta = {"kind": doc["kind"], "convention": doc["convention"]}
    if "params" in doc:
        meta.update(doc["params"])
    if "kt" in doc:
        meta["kt"] = doc["kt"]
    ny, nx = (int(v) for v in doc["shape"])
    values = np.array(doc["values"], dtype=np.float64)
    if values.shape != (ny, nx):
        raise ValueError(f"grid shape {values.shape} does not match {(ny, nx)}")
    x_min, x_max, y_min, y_max = (float(v) for v in doc["window"])
    return PhaseGrid(
        x_min=x_min, x_max=x_max, y_min=y_min, y_max=y_max,
        nx=nx, ny=ny, values=values, meta=meta,
    )


def read_grid_json(path) -> PhaseGrid:
    return grid_from_json_dict(read_json(path))
