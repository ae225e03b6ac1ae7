"""Parameter sweeps, threshold bisection, and the catalog of named experiments."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .electrostatics import kink_energy, reference_field
from .errors import BracketError, QCAError
from .hamiltonian import build, classical_levels_n2, rebuild_onsite
from .model import (Circuit, FieldRegion, FieldSpec, RegionField, UniformField,
                    driven_cell, field_input_circuit, longitudinal_array,
                    transverse_array)
from .solver import GroundStateResult, ground_state

PARAMETERS = ("E_y", "E_x", "v_in", "P_drv")
DEFAULT_GAP_NM = 10.0
DEFAULT_BISECT_TOL = 1e-4


class SweepError(QCAError):
    pass


def apply_parameter(circuit: Circuit, template: FieldSpec, parameter: str, value: float,
                    gap_nm: float = DEFAULT_GAP_NM) -> tuple[Circuit, FieldSpec]:
    """Set one sweep parameter on a circuit/field pair.

    Field parameters act on the uniform field, or on every region of a
    region field (the default outside field is left alone). ``v_in`` sets
    ``E_y = v_in / gap_nm``.
    """
    if parameter == "P_drv":
        if not circuit.drivers:
            raise SweepError("P_drv sweep needs at least one driver cell")
        return circuit.with_driver_polarization(value), template
    if parameter == "v_in":
        parameter, value = "E_y", value / gap_nm
    if parameter not in ("E_x", "E_y"):
        raise SweepError(f"unknown sweep parameter {parameter!r}; expected one of {PARAMETERS}")

    def set_component(E):
        return (value, E[1]) if parameter == "E_x" else (E[0], value)

    if isinstance(template, UniformField):
        return circuit, UniformField(set_component(template.E))
    if not template.regions:
        raise SweepError("region field has no regions to drive")
    regions = [replace(r, E=set_component(r.E)) for r in template.regions]
    return circuit, RegionField(regions, template.default_E)


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    steps: int
    circuit: Circuit
    field_template: FieldSpec = field(default_factory=UniformField)
    gap_nm: float = DEFAULT_GAP_NM

    def __post_init__(self):
        if self.parameter not in PARAMETERS:
            raise SweepError(f"unknown sweep parameter {self.parameter!r}; expected one of {PARAMETERS}")
        if self.steps < 2:
            raise SweepError("a sweep needs at least 2 steps")
        if self.start == self.stop:
            raise SweepError("sweep start and stop coincide")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True, eq=False)
class SweepResult:
    parameter: str
    values: np.ndarray
    polarizations: np.ndarray  # (steps, N)
    energies: np.ndarray
    gaps: np.ndarray
    degenerate: np.ndarray

    @property
    def n_cells(self) -> int:
        return self.polarizations.shape[1]

    def __len__(self):
        return len(self.values)

    def column(self, cell: int) -> np.ndarray:
        """Polarization of 1-based ``cell`` across the sweep."""
        return self.polarizations[:, cell - 1]


def solve_point(circuit: Circuit, field: FieldSpec) -> GroundStateResult:
    return ground_state(build(circuit, field))


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    values = spec.values
    # pair tables depend on geometry only, which no sweep parameter touches
    base = build(spec.circuit, spec.field_template)

    def job(i):
        v = float(values[i])
        try:
            c, f = apply_parameter(spec.circuit, spec.field_template, spec.parameter, v, spec.gap_nm)
            return ground_state(rebuild_onsite(base, c, f))
        except QCAError as exc:
            raise SweepError(f"row {i} ({spec.parameter}={v:.12g}): {exc}") from exc

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(job, range(len(values))))
    else:
        results = [job(i) for i in range(len(values))]
    return SweepResult(
        spec.parameter, values,
        np.array([r.polarizations for r in results]),
        np.array([r.energy for r in results]),
        np.array([r.gap for r in results]),
        np.array([r.degenerate for r in results]),
    )


def threshold_find(circuit: Circuit, field_template: FieldSpec, observable: int,
                   lo: float, hi: float, tol: float = DEFAULT_BISECT_TOL,
                   level: float = 0.0, parameter: str = "E_y") -> float:
    """Bisect for the field where ``P_observable`` crosses ``level``.

    ``observable`` is a 1-based cell index. With the default ``level=0`` this
    is the sign change of the observable's polarization.
    """
    if not 1 <= observable <= circuit.n_cells:
        raise ValueError(f"observable must be in 1..{circuit.n_cells}")

    def f(x):
        c, fld = apply_parameter(circuit, field_template, parameter, x)
        return solve_point(c, fld).polarizations[observable - 1] - level

    f_lo, f_hi = f(lo), f(hi)
    if np.sign(f_lo) == np.sign(f_hi) or f_lo == 0 or f_hi == 0:
        raise BracketError(f"P_{observable} - {level} does not change sign on [{lo}, {hi}] "
                           f"({f_lo:+.3g}, {f_hi:+.3g})")
    while abs(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- catalog ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ScenarioResult:
    name: str
    caption: str
    sweeps: dict[str, SweepResult]
    levels: np.ndarray | None = None  # rows of (E_y, E_00, E_01, E_10, E_11)
    metadata: dict = field(default_factory=dict)


A = 1.0
TRANS_SPACING = 1.0
LONG_SPACING = 2.0
E_O = reference_field(A, TRANS_SPACING)
IDEAL_GAP_NM = 10.0


def ideal_region_field(E_y: float = 0.0, n_long: int = 3, gap_nm: float = IDEAL_GAP_NM) -> RegionField:
    """Electrode gap around the longitudinal stack, zero field elsewhere."""
    y_mid = 0.5 * (n_long - 1) * LONG_SPACING
    rect = (-1.0, y_mid - gap_nm / 2, 0.5, y_mid + gap_nm / 2)
    return RegionField([FieldRegion(rect, (0.0, E_y))], (0.0, 0.0))


def _fig5():
    sweeps = {}
    for ey in (0.0, 0.2, 0.4, 0.42, 0.5):
        spec = SweepSpec("P_drv", -1.0, 1.0, 51, driven_cell(1.0, TRANS_SPACING, A, 0.001),
                         UniformField((0.0, ey)))
        sweeps[f"E_y={ey:g}"] = run_sweep(spec)
    return sweeps, None, {"gamma_eV": 0.001}


def _fig6():
    spec = SweepSpec("E_y", -E_O / 100, E_O / 100, 2, longitudinal_array(2, LONG_SPACING, A, 0.001))
    return {"longitudinal_n2": run_sweep(spec)}, None, {}


def _fig7():
    spec = SweepSpec("E_y", 0.0, 2 * E_O, 81, transverse_array(2, TRANS_SPACING, A, 0.001))
    return {"transverse_n2": run_sweep(spec)}, None, {}


def _fig8():
    sweeps, _, meta = _fig7()
    eys = np.linspace(0.0, 2 * E_O, 81)
    levels = np.array([(ey, *classical_levels_n2(A, TRANS_SPACING, ey)) for ey in eys])
    return sweeps, levels, meta


def _fig9():
    spec = SweepSpec("E_y", 0.0, 3 * E_O, 61, transverse_array(3, TRANS_SPACING, A, 0.010))
    circuit = spec.circuit
    thr = threshold_find(circuit, UniformField(), 2, 1.5 * E_O, 2.5 * E_O)
    return {"transverse_n3": run_sweep(spec)}, None, {"threshold_V_per_nm": thr, "threshold_over_E_o": thr / E_O}


def _fig_input_n8():
    spec = SweepSpec("E_y", -E_O / 4, E_O / 4, 2, field_input_circuit(3, 5, LONG_SPACING, TRANS_SPACING, A, 0.010))
    return {"input_n8": run_sweep(spec)}, None, {}


def _fig_nvaried():
    sweeps = {}
    for n_trans in (4, 3, 2, 1):
        circuit = field_input_circuit(3, n_trans, LONG_SPACING, TRANS_SPACING, A, 0.010)
        sweeps[f"n_trans={n_trans}"] = run_sweep(SweepSpec("E_y", -E_O / 10, E_O / 10, 2, circuit))
    return sweeps, None, {}


def _fig_failure():
    circuit = field_input_circuit(3, 5, LONG_SPACING, TRANS_SPACING, A, 0.010)
    # even step count keeps E_y = 0 off the grid
    spec = SweepSpec("E_y", -E_O, E_O, 40, circuit)
    thr = threshold_find(circuit, UniformField(), 8, 0.25 * E_O, 0.9 * E_O)
    return {"input_n8_uniform": run_sweep(spec)}, None, {"threshold_V_per_nm": thr, "threshold_over_E_o": thr / E_O}


def _fig_ideal():
    circuit = field_input_circuit(3, 5, LONG_SPACING, TRANS_SPACING, A, 0.050)
    sweeps = {
        "regions": run_sweep(SweepSpec("v_in", -5.0, 5.0, 101, circuit, ideal_region_field(), IDEAL_GAP_NM)),
        "uniform": run_sweep(SweepSpec("v_in", -5.0, 5.0, 101, circuit, UniformField(), IDEAL_GAP_NM)),
    }
    return sweeps, None, {"gamma_eV": 0.050, "gap_nm": IDEAL_GAP_NM}


_CATALOG: dict[str, tuple[str, Callable]] = {
    "fig5": ("single target cell beside a driver, P vs P_drv for several E_y", _fig5),
    "fig6_longitudinal": ("two-cell longitudinal array switched by E_y = +/-E_o/100", _fig6),
    "fig7_transverse_n2": ("two-cell transverse array, depolarized until E_y > E_o", _fig7),
    "fig8_levels": ("classical levels of the two-cell transverse array vs E_y", _fig8),
    "fig9_transverse_n3": ("three-cell transverse array, |101> until E_y > 2 E_o", _fig9),
    "fig_input_n8": ("8-cell field-input circuit switched by a weak uniform field", _fig_input_n8),
    "fig_nvaried": ("field-input circuit with 1-4 transverse cells at E_y = +/-E_o/10", _fig_nvaried),
    "fig_failure": ("8-cell field-input circuit failing under a strong uniform field", _fig_failure),
    "fig_ideal": ("8-cell circuit driven by an electrode-gap field vs a uniform field", _fig_ideal),
}

SCENARIOS = tuple(_CATALOG)


def scenario(name: str) -> ScenarioResult:
    try:
        caption, fn = _CATALOG[name]
    except KeyError:
        raise SweepError(f"unknown scenario {name!r}; valid names: {', '.join(SCENARIOS)}") from None
    sweeps, levels, meta = fn()
    meta = {"a_nm": A, "E_o_V_per_nm": E_O, "E_k_eV": kink_energy(A, TRANS_SPACING), **meta}
    return ScenarioResult(name, caption, sweeps, levels, meta)
