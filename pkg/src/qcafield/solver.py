"""Ground-state solvers and polarization read-out."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceError
from .hamiltonian import HamiltonianRep, build
from .model import PhysicalConstants, UniformField, driven_cell

#: gaps below this (eV) flag the ground state as degenerate
DEGENERACY_TOL = 1e-9


class DegenerateGroundStateWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class GroundStateResult:
    energy: float
    vector: np.ndarray
    gap: float
    degenerate: bool
    polarizations: np.ndarray
    method: str = "dense"
    iterations: int = 0

    def residual(self, rep: HamiltonianRep) -> float:
        return float(np.linalg.norm(rep.apply(self.vector) - self.energy * self.vector))


def polarizations(vector: np.ndarray, n_cells: int) -> np.ndarray:
    """``P_k = <sigma_z>`` for each cell, with ``sigma_z = +1`` on bit value 1."""
    vector = np.asarray(vector)
    if vector.shape != (1 << n_cells,):
        raise ValueError(f"expected a vector of length {1 << n_cells}, got shape {vector.shape}")
    prob = np.abs(vector) ** 2
    out = np.empty(n_cells)
    for k in range(n_cells):
        pk = prob.reshape(-1, 2, 1 << k).sum(axis=(0, 2))
        out[k] = pk[1] - pk[0]
    return out


def _fix_sign(v: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(v)))
    return -v if v[i] < 0 else v


def _result(rep, energy, vector, gap, method, iterations=0) -> GroundStateResult:
    vector = _fix_sign(vector / np.linalg.norm(vector))
    degenerate = bool(gap < DEGENERACY_TOL)
    if degenerate:
        warnings.warn(f"ground state is degenerate to within {gap:.3g} eV; "
                      "polarizations describe one member of the manifold",
                      DegenerateGroundStateWarning, stacklevel=3)
    vector.flags.writeable = False
    return GroundStateResult(float(energy), vector, float(gap), degenerate,
                             polarizations(vector, rep.n_cells), method, iterations)


def ground_state_dense(rep: HamiltonianRep) -> GroundStateResult:
    h = rep.dense()
    try:
        w, v = scipy.linalg.eigh(h, subset_by_index=[0, 1], check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"dense eigensolver failed: {exc}") from exc
    return _result(rep, w[0], v[:, 0].copy(), w[1] - w[0], "dense")


def ground_state_lanczos(rep: HamiltonianRep, seed: int = 0, tol: float = 1e-10,
                         max_iter: int = 500) -> GroundStateResult:
    """Lanczos with full reorthogonalization on the matrix-free operator.

    Iterates until the two lowest Ritz pairs both have residual norm below
    ``tol`` (eV). On breakdown the Krylov basis is extended with a fresh
    random vector, which recovers degenerate copies that a single Krylov
    sequence cannot reach. Deterministic for a given ``seed``.
    """
    dim = rep.dim
    rng = np.random.default_rng(seed)
    n_max = min(max_iter, dim)
    basis = np.empty((dim, n_max))
    alpha = np.zeros(n_max)
    beta = np.zeros(n_max)  # beta[j] couples basis[j] and basis[j+1]

    def fresh(j):
        for _ in range(3):
            q = rng.standard_normal(dim)
            for _ in range(2):
                q -= basis[:, :j] @ (basis[:, :j].T @ q)
            nrm = np.linalg.norm(q)
            if nrm > 1e-8:
                return q / nrm
        return None

    basis[:, 0] = fresh(0)
    n = 0
    check_every = 5
    theta = s = None
    for j in range(n_max):
        n = j + 1
        w = rep.apply(basis[:, j])
        alpha[j] = basis[:, j] @ w
        for _ in range(2):
            w -= basis[:, :n] @ (basis[:, :n].T @ w)
        b = np.linalg.norm(w)
        done = n == n_max
        if not done and (n % check_every == 0 or b < 1e-12 or n <= 2):
            theta, s = np.linalg.eigh(_tridiag(alpha[:n], beta[:n - 1]))
            k = min(2, n)
            res = np.abs(b * s[-1, :k])
            if n >= 2 and np.all(res < tol):
                break
        if done:
            break
        if b < 1e-12:
            q = fresh(n)
            if q is None:
                break
            beta[j] = 0.0
            basis[:, n] = q
        else:
            beta[j] = b
            basis[:, n] = w / b
    theta, s = np.linalg.eigh(_tridiag(alpha[:n], beta[:n - 1]))
    vec = basis[:, :n] @ s[:, 0]
    vec /= np.linalg.norm(vec)
    energy = float(vec @ rep.apply(vec))
    res = np.linalg.norm(rep.apply(vec) - energy * vec)
    if res > max(tol, 1e-8 * max(1.0, abs(energy))):
        raise ConvergenceError(f"Lanczos residual {res:.3g} eV after {n} iterations")
    gap = theta[1] - theta[0] if n >= 2 else np.inf
    return _result(rep, energy, vec, gap, "lanczos", n)


def _tridiag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.diag(a) + np.diag(b, 1) + np.diag(b, -1)


def ground_state(rep: HamiltonianRep, method: str = "auto", **kwargs) -> GroundStateResult:
    """Dense below ``rep.dense_max_cells`` cells, Lanczos above, unless forced."""
    if method == "auto":
        method = "dense" if rep.n_cells <= rep.dense_max_cells else "lanczos"
    if method == "dense":
        return ground_state_dense(rep)
    if method == "lanczos":
        return ground_state_lanczos(rep, **kwargs)
    raise ValueError(f"unknown method {method!r}")


def single_cell_response(P_drv: float, E_y: float, a: float = 1.0, spacing: float = 1.0,
                         gamma: float = 0.001, constants: PhysicalConstants | None = None) -> float:
    """Polarization of a target cell beside a driver of polarization ``P_drv`` in ``E_y``."""
    circuit = driven_cell(P_drv, spacing, a, gamma, constants)
    return float(ground_state_dense(build(circuit, UniformField((0.0, E_y)))).polarizations[0])
