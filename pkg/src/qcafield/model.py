"""Domain types and layout builders for two-dot QCA circuits.

Units throughout: lengths in nm, energies in eV, fields in V/nm, charges in
multiples of the elementary charge. With these units the dipole energy
``q_e * E * a`` in eV is numerically ``E * a``.

A cell holds one mobile electron on two dots. State ``|m>`` puts the electron
on dot ``m``. The axis vector points from dot 1 to dot 0, so

    dot 0 = center + (a/2) * axis
    dot 1 = center - (a/2) * axis
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence, Union

import numpy as np

from .errors import GeometryError

#: q_e^2 / (4 pi eps0) in eV nm
VACUUM_COULOMB_SCALE = 1.43996

#: minimum distance (nm) below which two dots count as coincident
MIN_DOT_SEPARATION = 1e-9

Vec2 = tuple[float, float]


def _vec2(value, name: str) -> Vec2:
    try:
        x, y = (float(c) for c in value)
    except (TypeError, ValueError):
        raise GeometryError(f"{name} must be a 2-component vector, got {value!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise GeometryError(f"{name} must be finite, got {value!r}")
    return (x, y)


@dataclass(frozen=True)
class PhysicalConstants:
    coulomb_scale: float = VACUUM_COULOMB_SCALE
    epsilon_r: float = 1.0
    elementary_charge: float = 1.0

    def __post_init__(self):
        if not self.coulomb_scale > 0:
            raise ValueError("coulomb_scale must be positive")
        if not self.epsilon_r >= 1:
            raise ValueError("epsilon_r must be >= 1")

    @property
    def coulomb_energy_scale(self) -> float:
        """q_e^2 / (4 pi eps0 eps_r) in eV nm."""
        return self.coulomb_scale / self.epsilon_r


def _check_axis(axis: Vec2) -> None:
    if abs(math.hypot(*axis) - 1.0) > 1e-12:
        raise GeometryError(f"axis must be a unit vector, got {axis}")


def _dots(center: Vec2, axis: Vec2, a: float) -> tuple[Vec2, Vec2]:
    h = 0.5 * a
    dot0 = (center[0] + h * axis[0], center[1] + h * axis[1])
    dot1 = (center[0] - h * axis[0], center[1] - h * axis[1])
    return dot0, dot1


@dataclass(frozen=True)
class Cell:
    center: Vec2
    axis: Vec2 = (0.0, 1.0)
    dot_separation: float = 1.0
    gamma: float = 0.001

    def __post_init__(self):
        object.__setattr__(self, "center", _vec2(self.center, "center"))
        object.__setattr__(self, "axis", _vec2(self.axis, "axis"))
        _check_axis(self.axis)
        if not self.dot_separation > 0:
            raise GeometryError("dot_separation must be positive")
        if not self.gamma >= 0:
            raise GeometryError("gamma must be non-negative")

    @property
    def dots(self) -> tuple[Vec2, Vec2]:
        """Positions of (dot 0, dot 1)."""
        return _dots(self.center, self.axis, self.dot_separation)

    @property
    def dipole_vector(self) -> Vec2:
        """Displacement from dot 1 to dot 0."""
        a = self.dot_separation
        return (a * self.axis[0], a * self.axis[1])


@dataclass(frozen=True)
class DriverCell:
    """Fixed-polarization cell modelled as static charges."""

    center: Vec2
    axis: Vec2 = (0.0, 1.0)
    dot_separation: float = 1.0
    polarization: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", _vec2(self.center, "center"))
        object.__setattr__(self, "axis", _vec2(self.axis, "axis"))
        _check_axis(self.axis)
        if not self.dot_separation > 0:
            raise GeometryError("dot_separation must be positive")
        if not -1.0 <= self.polarization <= 1.0:
            raise GeometryError(f"driver polarization must lie in [-1, 1], got {self.polarization}")

    @property
    def dots(self) -> tuple[Vec2, Vec2]:
        return _dots(self.center, self.axis, self.dot_separation)


@dataclass(frozen=True)
class UniformField:
    E: Vec2 = (0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "E", _vec2(self.E, "E"))

    def at(self, point: Sequence[float]) -> Vec2:
        return self.E


@dataclass(frozen=True)
class FieldRegion:
    """Axis-aligned rectangle ``[x0, x1) x [y0, y1)`` carrying a uniform field."""

    rect: tuple[float, float, float, float]
    E: Vec2

    def __post_init__(self):
        try:
            x0, y0, x1, y1 = (float(c) for c in self.rect)
        except (TypeError, ValueError):
            raise GeometryError(f"rect must be [x0, y0, x1, y1], got {self.rect!r}") from None
        if not (x1 > x0 and y1 > y0):
            raise GeometryError(f"degenerate rectangle {self.rect!r}")
        object.__setattr__(self, "rect", (x0, y0, x1, y1))
        object.__setattr__(self, "E", _vec2(self.E, "E"))

    def contains(self, point: Sequence[float]) -> bool:
        x0, y0, x1, y1 = self.rect
        return x0 <= point[0] < x1 and y0 <= point[1] < y1

    def overlaps(self, other: FieldRegion) -> bool:
        ax0, ay0, ax1, ay1 = self.rect
        bx0, by0, bx1, by1 = other.rect
        return min(ax1, bx1) > max(ax0, bx0) and min(ay1, by1) > max(ay0, by0)


@dataclass(frozen=True)
class RegionField:
    """Piecewise-uniform field: rectangles plus a default outside all of them."""

    regions: tuple[FieldRegion, ...] = ()
    default_E: Vec2 = (0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "regions", tuple(self.regions))
        object.__setattr__(self, "default_E", _vec2(self.default_E, "default_E"))
        for i, r in enumerate(self.regions):
            for j in range(i):
                if r.overlaps(self.regions[j]):
                    raise GeometryError(f"field regions {j} and {i} overlap")

    def at(self, point: Sequence[float]) -> Vec2:
        for r in self.regions:
            if r.contains(point):
                return r.E
        return self.default_E


FieldSpec = Union[UniformField, RegionField]


@dataclass(frozen=True)
class Circuit:
    """Ordered cells (basis-index order) plus static driver cells."""

    cells: tuple[Cell, ...]
    drivers: tuple[DriverCell, ...] = ()
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "drivers", tuple(self.drivers))
        if not self.cells:
            raise GeometryError("a circuit needs at least one cell")
        self._check_dots()

    def _check_dots(self) -> None:
        labels = []
        points = []
        for k, c in enumerate(self.cells, start=1):
            for m, d in enumerate(c.dots):
                labels.append(f"cell {k} dot {m}")
                points.append(d)
        for k, c in enumerate(self.drivers, start=1):
            for m, d in enumerate(c.dots):
                labels.append(f"driver {k} dot {m}")
                points.append(d)
        pts = np.asarray(points)
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.hypot(diff[..., 0], diff[..., 1])
        np.fill_diagonal(dist, np.inf)
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        if dist[i, j] <= MIN_DOT_SEPARATION:
            raise GeometryError(f"{labels[min(i, j)]} collides with {labels[max(i, j)]}")

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    def with_driver_polarization(self, polarization: float) -> Circuit:
        drivers = tuple(replace(d, polarization=polarization) for d in self.drivers)
        return replace(self, drivers=drivers)

    def with_gamma(self, gamma: float) -> Circuit:
        return replace(self, cells=tuple(replace(c, gamma=gamma) for c in self.cells))


def longitudinal_array(n: int, spacing: float = 2.0, a: float = 1.0, gamma: float = 0.001,
                       constants: PhysicalConstants | None = None) -> Circuit:
    """Cells stacked head to tail along +y, centers at ``(0, k * spacing)``."""
    if n < 1:
        raise GeometryError("n must be >= 1")
    if spacing < 2 * a:
        raise GeometryError(f"longitudinal spacing {spacing} < 2a = {2 * a}: dots of adjacent cells collide")
    cells = [Cell((0.0, k * spacing), (0.0, 1.0), a, gamma) for k in range(n)]
    return Circuit(cells, constants=constants or PhysicalConstants())


def transverse_array(n: int, spacing: float = 1.0, a: float = 1.0, gamma: float = 0.001,
                     constants: PhysicalConstants | None = None) -> Circuit:
    """Cells side by side along +x, all axes +y."""
    if n < 1:
        raise GeometryError("n must be >= 1")
    if not spacing > 0:
        raise GeometryError("transverse spacing must be positive")
    cells = [Cell((k * spacing, 0.0), (0.0, 1.0), a, gamma) for k in range(n)]
    return Circuit(cells, constants=constants or PhysicalConstants())


def field_input_circuit(n_long: int = 3, n_trans: int = 5, long_spacing: float = 2.0,
                        trans_spacing: float = 1.0, a: float = 1.0, gamma: float = 0.010,
                        constants: PhysicalConstants | None = None) -> Circuit:
    """Longitudinal input stack with a transverse wire attached beside its middle cell.

    Cells ``1..n_long`` form the stack at ``(0, k * long_spacing)``; cells
    ``n_long+1..n_long+n_trans`` sit at ``(j * trans_spacing, y_mid)`` for
    ``j = 1..n_trans`` where ``y_mid`` is the y-coordinate of the middle
    stack cell (the lower middle one for even ``n_long``).
    """
    if n_long < 1 or n_trans < 0:
        raise GeometryError("need n_long >= 1 and n_trans >= 0")
    if long_spacing < 2 * a:
        raise GeometryError(f"longitudinal spacing {long_spacing} < 2a = {2 * a}: dots of adjacent cells collide")
    y_mid = ((n_long - 1) // 2) * long_spacing
    cells = [Cell((0.0, k * long_spacing), (0.0, 1.0), a, gamma) for k in range(n_long)]
    cells += [Cell((j * trans_spacing, y_mid), (0.0, 1.0), a, gamma) for j in range(1, n_trans + 1)]
    return Circuit(cells, constants=constants or PhysicalConstants())


def driven_cell(polarization: float, spacing: float = 1.0, a: float = 1.0, gamma: float = 0.001,
                constants: PhysicalConstants | None = None) -> Circuit:
    """One target cell at the origin with a side-by-side driver at ``(-spacing, 0)``."""
    target = Cell((0.0, 0.0), (0.0, 1.0), a, gamma)
    driver = DriverCell((-spacing, 0.0), (0.0, 1.0), a, polarization)
    return Circuit([target], [driver], constants or PhysicalConstants())


def mirror_permutation(circuit: Circuit, tol: float = 1e-9) -> list[int] | None:
    """Cell permutation induced by reflecting the layout through a horizontal line.

    The mirror line is the mean dot y-coordinate. Reflection swaps the dots
    of every y-aligned cell, so it composes with a global bit flip; an
    applied ``E_y`` changes sign under it. Returns ``sigma`` (0-based) with
    cell ``k`` mapped onto cell ``sigma[k]``, or None when the layout (drivers
    included) is not symmetric.
    """
    if circuit.drivers:
        return None
    ys = [d[1] for c in circuit.cells for d in c.dots]
    y0 = sum(ys) / len(ys)

    def reflect(p):
        return (p[0], 2 * y0 - p[1])

    sigma = []
    for c in circuit.cells:
        d0, d1 = c.dots
        r0, r1 = reflect(d0), reflect(d1)
        match = None
        for j, other in enumerate(circuit.cells):
            o0, o1 = other.dots
            if (math.dist(r0, o1) < tol and math.dist(r1, o0) < tol
                    and abs(other.gamma - c.gamma) < tol):
                match = j
                break
        if match is None:
            return None
        sigma.append(match)
    return sigma
