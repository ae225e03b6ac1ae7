"""Point-charge electrostatics of two-dot cells.

Each cell carries its mobile electron (-1) on the occupied dot and a +1
neutralizing charge split evenly over both dots. Interaction energies use
the *net* dot charges: ``-1/2`` on the occupied dot and ``+1/2`` on the
empty one. The raw three-charge picture is kept in :func:`cell_charges`
and is what the classical oracle sums over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import CoincidentChargeError
from .model import (MIN_DOT_SEPARATION, Cell, DriverCell, FieldSpec,
                    PhysicalConstants, Vec2)


@dataclass(frozen=True)
class PointCharge:
    position: Vec2
    charge: float


def cell_charges(cell: Cell, m: int) -> list[PointCharge]:
    """Electron on dot ``m`` plus +1/2 on each dot (net-neutral)."""
    if m not in (0, 1):
        raise ValueError(f"cell state must be 0 or 1, got {m!r}")
    dots = cell.dots
    return [PointCharge(dots[m], -1.0),
            PointCharge(dots[0], 0.5),
            PointCharge(dots[1], 0.5)]


def driver_charges(driver: DriverCell) -> list[PointCharge]:
    """Net dot charges of a driver: ``-P/2`` on dot 1 and ``+P/2`` on dot 0."""
    p = driver.polarization
    dot0, dot1 = driver.dots
    return [PointCharge(dot0, 0.5 * p), PointCharge(dot1, -0.5 * p)]


def _net_charges(cell: Cell, m: int) -> list[PointCharge]:
    dots = cell.dots
    return [PointCharge(dots[m], -0.5), PointCharge(dots[1 - m], 0.5)]


def coulomb_energy(group_a: Iterable[PointCharge], group_b: Iterable[PointCharge],
                   constants: PhysicalConstants) -> float:
    """Interaction energy between two disjoint groups of point charges (eV)."""
    group_b = list(group_b)
    total = 0.0
    for qa in group_a:
        for qb in group_b:
            r = math.dist(qa.position, qb.position)
            if r < MIN_DOT_SEPARATION:
                raise CoincidentChargeError(f"coincident charges at {qa.position} and {qb.position}")
            total += qa.charge * qb.charge / r
    return constants.coulomb_energy_scale * total


def pair_interaction(cell_i: Cell, cell_j: Cell, m_i: int, m_j: int,
                     constants: PhysicalConstants) -> float:
    """Electrostatic energy of cell i in state ``m_i`` with cell j in ``m_j``."""
    return coulomb_energy(_net_charges(cell_i, m_i), _net_charges(cell_j, m_j), constants)


def pair_table(cell_i: Cell, cell_j: Cell, constants: PhysicalConstants) -> np.ndarray:
    """2x2 table ``u[m_i, m_j]`` of :func:`pair_interaction` values."""
    u = np.empty((2, 2))
    for mi in (0, 1):
        for mj in (0, 1):
            u[mi, mj] = pair_interaction(cell_i, cell_j, mi, mj, constants)
    return u


def driver_detuning(driver: DriverCell, cell: Cell, constants: PhysicalConstants) -> float:
    """Detuning ``U(|1>) - U(|0>)`` of ``cell`` in the field of ``driver``."""
    src = driver_charges(driver)
    return (coulomb_energy(_net_charges(cell, 1), src, constants)
            - coulomb_energy(_net_charges(cell, 0), src, constants))


def kink_energy(a: float = 1.0, spacing: float = 1.0,
                constants: PhysicalConstants | None = None) -> float:
    """Detuning of a cell next to a fully polarized side-by-side driver."""
    if not spacing > 0:
        raise ValueError("spacing must be positive")
    constants = constants or PhysicalConstants()
    target = Cell((spacing, 0.0), (0.0, 1.0), a, 0.0)
    driver = DriverCell((0.0, 0.0), (0.0, 1.0), a, 1.0)
    return driver_detuning(driver, target, constants)


def reference_field(a: float = 1.0, spacing: float = 1.0,
                    constants: PhysicalConstants | None = None) -> float:
    """Field (V/nm) along the cell axis that balances one fully polarized neighbour."""
    constants = constants or PhysicalConstants()
    return abs(kink_energy(a, spacing, constants) / (constants.elementary_charge * a))


def field_detuning(field: FieldSpec, cell: Cell, constants: PhysicalConstants | None = None) -> float:
    """``-q_e E . a_vec`` with the field sampled at the cell center."""
    q = constants.elementary_charge if constants else 1.0
    ex, ey = field.at(cell.center)
    ax, ay = cell.dipole_vector
    return -q * (ex * ax + ey * ay)
