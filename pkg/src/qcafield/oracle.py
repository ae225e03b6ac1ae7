"""Independent reference paths for the circuit energies.

Nothing here goes through :mod:`qcafield.hamiltonian` or the pair tables in
:mod:`qcafield.electrostatics`. Classical energies are summed over the raw
charges of every cell (electron plus both neutralizing halves), and the
single-cell quantum problem is solved in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentChargeError, SizeError
from .model import MIN_DOT_SEPARATION, Circuit, FieldSpec

MAX_ENUMERATE_CELLS = 20
ARGMIN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ClassicalSpectrum:
    energies: np.ndarray
    argmin: tuple[int, ...]
    min_degenerate: bool

    @property
    def minimum(self) -> float:
        return float(self.energies[self.argmin[0]])


def _raw_charges(cell, m):
    d0, d1 = cell.dots
    return [((d0, d1)[m], -1.0), (d0, 0.5), (d1, 0.5)]


def _driver_raw_charges(driver):
    d0, d1 = driver.dots
    p = driver.polarization
    return [(d1, -(1 + p) / 2), (d0, -(1 - p) / 2), (d0, 0.5), (d1, 0.5)]


def _coulomb(group_a, group_b, scale):
    total = 0.0
    for ra, qa in group_a:
        for rb, qb in group_b:
            r = math.hypot(ra[0] - rb[0], ra[1] - rb[1])
            if r < MIN_DOT_SEPARATION:
                raise CoincidentChargeError(f"coincident charges at {ra} and {rb}")
            total += qa * qb / r
    return scale * total


def _field_energy(cell, m, field, q_e):
    ex, ey = field.at(cell.center)
    cx, cy = cell.center
    total = 0.0
    for r, q in _raw_charges(cell, m):
        # potential -E.(r - center), field frozen at the cell center
        phi = -(ex * (r[0] - cx) + ey * (r[1] - cy))
        total += q_e * q * phi
    return total


def classical_enumerate(circuit: Circuit, field: FieldSpec) -> ClassicalSpectrum:
    """Energies of all ``2**N`` localized configurations (no tunneling)."""
    n = circuit.n_cells
    if n > MAX_ENUMERATE_CELLS:
        raise SizeError(f"enumeration limited to {MAX_ENUMERATE_CELLS} cells")
    scale = circuit.constants.coulomb_energy_scale
    q_e = circuit.constants.elementary_charge
    drivers = [c for d in circuit.drivers for c in _driver_raw_charges(d)]

    # onsite[k][m]: field + driver energy of cell k in state m
    onsite = [[_field_energy(c, m, field, q_e) + (_coulomb(_raw_charges(c, m), drivers, scale) if drivers else 0.0)
               for m in (0, 1)] for c in circuit.cells]

    p = np.arange(1 << n)
    bits = [(p >> k) & 1 for k in range(n)]
    energies = np.zeros(1 << n)
    for k in range(n):
        energies += np.where(bits[k] == 1, onsite[k][1], onsite[k][0])
    for i in range(n):
        for j in range(i + 1, n):
            u = np.array([[_coulomb(_raw_charges(circuit.cells[i], mi), _raw_charges(circuit.cells[j], mj), scale)
                           for mj in (0, 1)] for mi in (0, 1)])
            energies += u[bits[i], bits[j]]

    emin = energies.min()
    argmin = tuple(int(x) for x in np.flatnonzero(energies <= emin + ARGMIN_TOL))
    return ClassicalSpectrum(energies, argmin, len(argmin) > 1)


def two_level_analytic(delta_total: float, gamma: float) -> tuple[float, float]:
    """Ground energy and polarization of ``-gamma sigma_x + (delta/2) sigma_z``."""
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    energy = -math.hypot(delta_total / 2, gamma)
    denom = math.hypot(delta_total, 2 * gamma)
    pol = 0.0 if denom == 0 else -delta_total / denom
    return energy, pol
