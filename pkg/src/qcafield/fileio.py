"""JSON circuit documents and CSV output.

Document layout (units nm, eV, V/nm)::

    {
      "constants": {"coulomb_scale": 1.43996, "epsilon_r": 1},
      "cells":   [{"center": [0, 0], "axis": [0, 1], "a": 1, "gamma": 0.001}],
      "drivers": [{"center": [-1, 0], "axis": [0, 1], "a": 1, "polarization": 1}],
      "field":   {"type": "uniform", "E": [0, 0.1]}
    }

or ``"field": {"type": "regions", "default_E": [0, 0],
"regions": [{"rect": [x0, y0, x1, y1], "E": [0, 0.5]}]}``.
"""

from __future__ import annotations

import csv
import io
import json
from typing import TextIO

import numpy as np

from .errors import DocumentError, QCAError
from .model import (Cell, Circuit, DriverCell, FieldRegion, FieldSpec,
                    PhysicalConstants, RegionField, UniformField)

DEFAULT_AXIS = (0.0, 1.0)
DEFAULT_A = 1.0
DEFAULT_GAMMA = 0.001
FLOAT_FORMAT = "{:.12g}"


def _get(obj, key, where, default=None, required=False):
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object")
    if key not in obj:
        if required:
            raise DocumentError(f"{where}: missing '{key}'")
        return default
    return obj[key]


def _number(value, where) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _pair(value, where) -> tuple[float, float]:
    if not isinstance(value, list) or len(value) != 2:
        raise DocumentError(f"{where}: expected [x, y], got {value!r}")
    return (_number(value[0], where), _number(value[1], where))


def _parse_field(doc) -> FieldSpec:
    spec = _get(doc, "field", "document", {"type": "uniform", "E": [0, 0]})
    kind = _get(spec, "type", "field", "uniform")
    if kind == "uniform":
        return UniformField(_pair(_get(spec, "E", "field", [0, 0]), "field.E"))
    if kind == "regions":
        regions = []
        for i, r in enumerate(_get(spec, "regions", "field", [])):
            where = f"field.regions[{i}]"
            rect = _get(r, "rect", where, required=True)
            if not isinstance(rect, list) or len(rect) != 4:
                raise DocumentError(f"{where}.rect: expected [x0, y0, x1, y1]")
            try:
                regions.append(FieldRegion(tuple(_number(v, f"{where}.rect") for v in rect),
                                           _pair(_get(r, "E", where, required=True), f"{where}.E")))
            except QCAError as exc:
                raise DocumentError(f"{where}: {exc}") from exc
        try:
            return RegionField(regions, _pair(_get(spec, "default_E", "field", [0, 0]), "field.default_E"))
        except QCAError as exc:
            raise DocumentError(f"field: {exc}") from exc
    raise DocumentError(f"field.type: expected 'uniform' or 'regions', got {kind!r}")


def parse_circuit(text: str) -> tuple[Circuit, FieldSpec]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise DocumentError("document: expected a JSON object")

    c = _get(doc, "constants", "document", {})
    try:
        constants = PhysicalConstants(
            coulomb_scale=_number(_get(c, "coulomb_scale", "constants", PhysicalConstants.coulomb_scale),
                                  "constants.coulomb_scale"),
            epsilon_r=_number(_get(c, "epsilon_r", "constants", 1.0), "constants.epsilon_r"),
        )
    except ValueError as exc:
        raise DocumentError(f"constants: {exc}") from exc

    cells = []
    for i, item in enumerate(_get(doc, "cells", "document", required=True)):
        where = f"cells[{i}] (cell {i + 1})"
        try:
            cells.append(Cell(_pair(_get(item, "center", where, required=True), f"{where}.center"),
                              _pair(_get(item, "axis", where, list(DEFAULT_AXIS)), f"{where}.axis"),
                              _number(_get(item, "a", where, DEFAULT_A), f"{where}.a"),
                              _number(_get(item, "gamma", where, DEFAULT_GAMMA), f"{where}.gamma")))
        except QCAError as exc:
            raise DocumentError(f"{where}: {exc}") from exc

    drivers = []
    for i, item in enumerate(_get(doc, "drivers", "document", [])):
        where = f"drivers[{i}]"
        try:
            drivers.append(DriverCell(_pair(_get(item, "center", where, required=True), f"{where}.center"),
                                      _pair(_get(item, "axis", where, list(DEFAULT_AXIS)), f"{where}.axis"),
                                      _number(_get(item, "a", where, DEFAULT_A), f"{where}.a"),
                                      _number(_get(item, "polarization", where, 1.0), f"{where}.polarization")))
        except QCAError as exc:
            raise DocumentError(f"{where}: {exc}") from exc

    try:
        circuit = Circuit(cells, drivers, constants)
    except QCAError as exc:
        raise DocumentError(str(exc)) from exc
    return circuit, _parse_field(doc)


def circuit_to_dict(circuit: Circuit, field: FieldSpec) -> dict:
    doc = {
        "constants": {"coulomb_scale": circuit.constants.coulomb_scale,
                      "epsilon_r": circuit.constants.epsilon_r},
        "cells": [{"center": list(c.center), "axis": list(c.axis), "a": c.dot_separation, "gamma": c.gamma}
                  for c in circuit.cells],
        "drivers": [{"center": list(d.center), "axis": list(d.axis), "a": d.dot_separation,
                     "polarization": d.polarization} for d in circuit.drivers],
    }
    if isinstance(field, UniformField):
        doc["field"] = {"type": "uniform", "E": list(field.E)}
    else:
        doc["field"] = {"type": "regions", "default_E": list(field.default_E),
                        "regions": [{"rect": list(r.rect), "E": list(r.E)} for r in field.regions]}
    return doc


def render_circuit(circuit: Circuit, field: FieldSpec) -> str:
    return json.dumps(circuit_to_dict(circuit, field), indent=2)


def fmt(x: float) -> str:
    return FLOAT_FORMAT.format(float(x))


def sweep_rows(sweep) -> tuple[list[str], list[list[str]]]:
    header = ["param", *(f"P_{k}" for k in range(1, sweep.n_cells + 1)), "energy_eV", "gap_eV", "degenerate"]
    rows = []
    for i, v in enumerate(sweep.values):
        rows.append([fmt(v), *(fmt(p) for p in sweep.polarizations[i]),
                     fmt(sweep.energies[i]), fmt(sweep.gaps[i]), str(int(sweep.degenerate[i]))])
    return header, rows


def write_csv(header, rows, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def sweep_to_csv(sweep) -> str:
    buf = io.StringIO()
    write_csv(*sweep_rows(sweep), buf)
    return buf.getvalue()


def levels_to_csv(levels: np.ndarray) -> str:
    buf = io.StringIO()
    write_csv(["E_y", "E_00_eV", "E_01_eV", "E_10_eV", "E_11_eV"],
              [[fmt(x) for x in row] for row in levels], buf)
    return buf.getvalue()
