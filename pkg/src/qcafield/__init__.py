"""Ground-state simulator for field-driven bit write-in to two-dot QCA circuits."""

from .electrostatics import (cell_charges, driver_detuning, field_detuning, kink_energy,
                             pair_interaction, pair_table, reference_field)
from .errors import (BracketError, CoincidentChargeError, ConvergenceError, DocumentError,
                     GeometryError, QCAError, SizeError)
from .hamiltonian import HamiltonianRep, basis_bits, basis_index, build, classical_levels_n2
from .model import (Cell, Circuit, DriverCell, FieldRegion, PhysicalConstants, RegionField,
                    UniformField, driven_cell, field_input_circuit, longitudinal_array,
                    mirror_permutation, transverse_array)
from .oracle import ClassicalSpectrum, classical_enumerate, two_level_analytic
from .scenarios import (SCENARIOS, ScenarioResult, SweepResult, SweepSpec, run_sweep, scenario,
                        threshold_find)
from .solver import (GroundStateResult, ground_state, ground_state_dense, ground_state_lanczos,
                     polarizations, single_cell_response)

__version__ = "0.1.0"
