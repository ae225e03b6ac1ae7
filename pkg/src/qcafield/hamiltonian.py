"""Circuit Hamiltonian in the product basis.

Basis state ``p`` encodes cell ``k`` (1-based) in bit ``k-1``:
``p = sum_k m_k 2**(k-1)``. Per cell, ``sigma_z = |1><1| - |0><0|`` and the
single-cell term is ``-gamma sigma_x + (Delta + Delta_E)/2 sigma_z``. The
intercell term is diagonal and built from raw Coulomb pair tables, so the
energy zero is not shifted.

The operator is available dense (small N) or matrix-free through
:meth:`HamiltonianRep.apply`, which costs O(N 2**N) per product.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from .electrostatics import driver_detuning, field_detuning, kink_energy, pair_table
from .errors import SizeError
from .model import Circuit, FieldSpec, PhysicalConstants

DEFAULT_MAX_CELLS = 24
DEFAULT_DENSE_MAX_CELLS = 12


def basis_index(bits: Sequence[int]) -> int:
    """Pack per-cell states ``(m_1, ..., m_N)`` into the basis index."""
    p = 0
    for k, m in enumerate(bits):
        if m not in (0, 1):
            raise ValueError(f"bit {k + 1} must be 0 or 1, got {m!r}")
        p |= int(m) << k
    return p


def basis_bits(p: int, n_cells: int) -> list[int]:
    """Inverse of :func:`basis_index`."""
    if not 0 <= p < 1 << n_cells:
        raise ValueError(f"index {p} out of range for {n_cells} cells")
    return [(p >> k) & 1 for k in range(n_cells)]


def bit_columns(n_cells: int) -> np.ndarray:
    """``(N, 2**N)`` uint8 array; row k holds bit k of every basis index."""
    p = np.arange(1 << n_cells, dtype=np.int64)
    return np.stack([((p >> k) & 1).astype(np.uint8) for k in range(n_cells)])


@dataclass(frozen=True, eq=False)
class HamiltonianRep:
    n_cells: int
    deltas_field: np.ndarray
    deltas_driver: np.ndarray
    gammas: np.ndarray
    pairs: tuple[tuple[int, int], ...]
    pair_tables: np.ndarray
    dense_max_cells: int = DEFAULT_DENSE_MAX_CELLS

    @property
    def dim(self) -> int:
        return 1 << self.n_cells

    @property
    def shape(self) -> tuple[int, int]:
        return (self.dim, self.dim)

    @property
    def deltas(self) -> np.ndarray:
        """Total per-cell detuning ``Delta + Delta_E``."""
        return self.deltas_field + self.deltas_driver

    @cached_property
    def interaction_diagonal(self) -> np.ndarray:
        """Coulomb part of the diagonal; depends on geometry only."""
        diag = np.zeros(self.dim)
        bits = bit_columns(self.n_cells)
        for (i, j), u in zip(self.pairs, self.pair_tables):
            diag += u[bits[i], bits[j]]
        diag.flags.writeable = False
        return diag

    @cached_property
    def diagonal(self) -> np.ndarray:
        signs = 2.0 * bit_columns(self.n_cells) - 1.0
        diag = self.interaction_diagonal + 0.5 * (self.deltas @ signs)
        diag.flags.writeable = False
        return diag

    def dense(self) -> np.ndarray:
        """Materialized ``2**N x 2**N`` matrix (cached)."""
        if self.n_cells > self.dense_max_cells:
            raise SizeError(f"dense form limited to {self.dense_max_cells} cells, circuit has {self.n_cells}")
        return self._dense

    @cached_property
    def _dense(self) -> np.ndarray:
        h = np.diag(self.diagonal)
        idx = np.arange(self.dim)
        for k in range(self.n_cells):
            h[idx, idx ^ (1 << k)] = -self.gammas[k]
        h.flags.writeable = False
        return h

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Matrix-free ``H @ v`` for a vector or a ``(dim, m)`` block of columns."""
        v = np.asarray(v)
        if v.shape[0] != self.dim or v.ndim > 2:
            raise ValueError(f"expected leading dimension {self.dim}, got shape {v.shape}")
        diag = self.diagonal if v.ndim == 1 else self.diagonal[:, None]
        out = diag * v
        tail = v.shape[1:]
        for k in range(self.n_cells):
            g = self.gammas[k]
            if g == 0.0:
                continue
            stride = 1 << k
            vr = v.reshape(-1, 2, stride, *tail)
            ov = out.reshape(-1, 2, stride, *tail)
            ov[:, 0] -= g * vr[:, 1]
            ov[:, 1] -= g * vr[:, 0]
        return out

    __matmul__ = apply


def _onsite(circuit: Circuit, field: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    const = circuit.constants
    d_field = np.array([field_detuning(field, c, const) for c in circuit.cells])
    d_drv = np.array([sum(driver_detuning(d, c, const) for d in circuit.drivers)
                      for c in circuit.cells], dtype=float)
    d_field.flags.writeable = False
    d_drv.flags.writeable = False
    return d_field, d_drv


def build(circuit: Circuit, field: FieldSpec, max_cells: int = DEFAULT_MAX_CELLS,
          dense_max_cells: int = DEFAULT_DENSE_MAX_CELLS) -> HamiltonianRep:
    n = circuit.n_cells
    if n > max_cells:
        raise SizeError(f"{n} cells exceeds the limit of {max_cells}")
    const = circuit.constants
    d_field, d_drv = _onsite(circuit, field)
    gammas = np.array([c.gamma for c in circuit.cells], dtype=float)
    pairs = tuple(combinations(range(n), 2))
    tables = np.array([pair_table(circuit.cells[i], circuit.cells[j], const) for i, j in pairs])
    tables = tables.reshape(len(pairs), 2, 2)
    gammas.flags.writeable = False
    tables.flags.writeable = False
    return HamiltonianRep(n, d_field, d_drv, gammas, pairs, tables, dense_max_cells)


def rebuild_onsite(rep: HamiltonianRep, circuit: Circuit, field: FieldSpec) -> HamiltonianRep:
    """New operator with ``rep``'s pair tables and tunneling but fresh detunings.

    ``circuit`` must have the same cells as the one ``rep`` was built from;
    only the field and driver polarizations may differ.
    """
    if circuit.n_cells != rep.n_cells:
        raise ValueError("circuit does not match the operator")
    d_field, d_drv = _onsite(circuit, field)
    fresh = replace(rep, deltas_field=d_field, deltas_driver=d_drv)
    # pair tables are shared, so the Coulomb diagonal carries over
    fresh.__dict__["interaction_diagonal"] = rep.interaction_diagonal
    return fresh


def classical_levels_n2(a: float = 1.0, spacing: float = 1.0, E_y: float = 0.0,
                        constants: PhysicalConstants | None = None) -> tuple[float, float, float, float]:
    """Classical levels ``(E_00, E_01, E_10, E_11)`` of a side-by-side pair in ``E_y``.

    Zero of interaction energy is the mean of kinked and unkinked pair
    energies; zero of field energy puts the electron midway between dots.
    """
    constants = constants or PhysicalConstants()
    ek = kink_energy(a, spacing, constants)
    dipole = constants.elementary_charge * E_y * a
    return (ek / 2 + dipole, -ek / 2, -ek / 2, ek / 2 - dipole)
