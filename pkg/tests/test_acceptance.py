"""Acceptance suite: one recorded PASS/FAIL line per criterion at its stated tolerance."""
import math
import time

import numpy as np
import pytest
from _circuits import random_circuit, random_field

from qcafield import (SCENARIOS, Cell, Circuit, UniformField, build, classical_enumerate,
                      classical_levels_n2, driven_cell, field_input_circuit, ground_state_dense,
                      ground_state_lanczos, kink_energy, longitudinal_array, mirror_permutation,
                      reference_field, scenario, threshold_find, transverse_array, two_level_analytic)
from qcafield.scenarios import solve_point

E_O = reference_field()
E_K = kink_energy()


def pol(circuit, ey):
    return solve_point(circuit, UniformField((0.0, ey))).polarizations


def test_criterion_01_kink_energy(report):
    rel = abs(E_K - 0.4207) / 0.4207
    ok = rel <= 0.01
    assert report("1 kink energy within 1% of 420.7 meV", ok, f"E_k={E_K * 1e3:.2f} meV, rel={rel:.4f}")


def test_criterion_02_single_cell_response(report):
    t0 = time.perf_counter()
    result = scenario("fig5")
    elapsed = time.perf_counter() - t0
    assert result.metadata["gamma_eV"] == 0.001
    at0 = result.sweeps["E_y=0"]
    p_drv, p = at0.values, at0.column(1)
    odd = np.allclose(p, -p[::-1], atol=1e-12) and np.allclose(p_drv, -p_drv[::-1], atol=1e-15)
    p_one = p[-1]
    graze = result.sweeps["E_y=0.42"].column(1)[-1]
    lock = result.sweeps["E_y=0.5"].column(1)
    checks = {
        "odd": odd,
        "P(1)<-0.99": p_one < -0.99,
        "|P(1)|<0.1 at 0.42 V/nm": abs(graze) < 0.1,
        "P>0 at 0.5 V/nm": bool(np.all(lock > 0)),
        "runtime<1s": elapsed < 1.0,
    }
    failed = [k for k, v in checks.items() if not v]
    detail = (f"gamma=1 meV, P(1)|E=0={p_one:.5f}, P(1)|E=0.42={graze:.4f}, min P|E=0.5={lock.min():.4f}, "
              f"{elapsed:.2f}s" + (f"; failed: {', '.join(failed)}" if failed else ""))
    assert report("2 single-cell response vs driver and field", not failed, detail)


def test_criterion_03_longitudinal_switching(report):
    circuit = longitudinal_array(2, 2.0, 1.0, 0.001)
    up, down = pol(circuit, E_O / 100), pol(circuit, -E_O / 100)
    ok = bool(np.all(up > 0.99) and np.all(down < -0.99))
    assert report("3 longitudinal N=2 switching at +-E_o/100", ok, f"P(+)={up.round(5)}, P(-)={down.round(5)}")


def test_criterion_04_transverse_n2(report):
    circuit = transverse_array(2, 1.0, 1.0, 0.001)
    half, strong = pol(circuit, 0.5 * E_O), pol(circuit, 1.2 * E_O)
    # P_k rises from 0 to +1 without crossing zero, so the crossing is located at half polarization
    thr = threshold_find(circuit, UniformField(), 1, 0.1 * E_O, 2.0 * E_O, level=0.5)
    levels_err = 0.0
    for ey in np.linspace(-2 * E_O, 2 * E_O, 41):
        e00, e01, e10, e11 = classical_levels_n2(1.0, 1.0, ey)
        expected = (E_K / 2 + ey, -E_K / 2, -E_K / 2, E_K / 2 - ey)
        levels_err = max(levels_err, max(abs(x - y) for x, y in zip((e00, e01, e10, e11), expected)))
    ok = (np.all(np.abs(half) < 0.05) and np.all(strong > 0.99)
          and abs(thr / E_O - 1) <= 0.02 and levels_err <= 1e-12)
    assert report("4 transverse N=2 depolarized, then aligned; crossing at E_o", bool(ok),
                  f"|P|(0.5E_o)={np.abs(half).max():.2e}, P(1.2E_o)={strong.min():.5f}, "
                  f"crossing={thr / E_O:.4f} E_o, levels err={levels_err:.1e}")


def test_criterion_05_transverse_n3(report):
    circuit = transverse_array(3, 1.0, 1.0, 0.010)
    wire = all(np.array_equal(np.sign(pol(circuit, f * E_O)), [1, -1, 1])
               for f in np.arange(0.1, 1.8001, 0.05))
    aligned = all(np.array_equal(np.sign(pol(circuit, f * E_O)), [1, 1, 1])
                  for f in np.arange(2.2, 4.0001, 0.1))
    thr = threshold_find(circuit, UniformField(), 2, 1.0 * E_O, 3.0 * E_O)
    ok = wire and aligned and abs(thr / (2 * E_O) - 1) <= 0.10
    assert report("5 transverse N=3 wire state then aligned; threshold near 2E_o", ok,
                  f"(+,-,+) on [0.1,1.8]E_o: {wire}, (+,+,+) on [2.2,4]E_o: {aligned}, "
                  f"threshold={thr / E_O:.4f} E_o")


def test_criterion_06_field_input_circuit(report):
    ok, notes = True, []
    for sign in (1, -1):
        p = pol(field_input_circuit(3, 5, gamma=0.010), sign * 0.25 * E_O)
        good = (np.all(np.sign(p[:3]) == sign)
                and np.all(np.sign(p[3:]) == [-sign * (-1) ** j for j in range(5)])
                and np.sign(p[7]) == -sign and abs(p[7]) > 0.9)
        ok &= bool(good)
        notes.append(f"P_8({'+' if sign > 0 else '-'})={p[7]:.4f}")
    for n_trans in range(1, 6):
        for sign in (1, -1):
            p = pol(field_input_circuit(3, n_trans, gamma=0.010), sign * 0.25 * E_O)
            ok &= bool(np.all(np.sign(p[:3]) == sign)
                       and np.all(np.sign(p[3:]) == [-sign * (-1) ** j for j in range(n_trans)]))
    notes.append("n_trans 1..5 stable" if ok else "pattern broken")
    assert report("6 field-input circuit writes the complemented bit at 0.25E_o", ok, ", ".join(notes))


def test_criterion_07_uniform_field_failure(report):
    t0 = time.perf_counter()
    thr = threshold_find(field_input_circuit(3, 5, gamma=0.010), UniformField(), 8, 0.25 * E_O, 0.9 * E_O)
    elapsed = time.perf_counter() - t0
    ok = 0.4 * E_O <= thr <= 0.7 * E_O and elapsed < 5.0
    assert report("7 uniform-field failure threshold in [0.4, 0.7] E_o", ok,
                  f"threshold={thr / E_O:.4f} E_o, {elapsed:.2f}s")


def test_criterion_08_electrode_region_field(report):
    result = scenario("fig_ideal")
    reg, uni = result.sweeps["regions"], result.sweeps["uniform"]
    nz = reg.values != 0
    no_flip = bool(np.all(np.sign(reg.column(8)[nz]) == -np.sign(reg.values[nz])))
    flips = bool(np.any(np.sign(uni.column(8)[nz]) == np.sign(uni.values[nz])))
    ok = no_flip and flips and result.metadata["gamma_eV"] == 0.05
    assert report("8 electrode-region field never reverses; uniform field does", ok,
                  f"regions complement everywhere: {no_flip}, uniform reversal present: {flips}, "
                  f"{len(reg.values)} points over +-5 V")


def test_criterion_09_oracle_equivalence(report):
    rng = np.random.default_rng(2024)
    diag_err, lanczos_err = 0.0, 0.0
    for _ in range(50):
        circuit = random_circuit(rng, int(rng.integers(1, 11)), int(rng.integers(0, 3)))
        field = random_field(rng)
        rep = build(circuit, field)
        diag_err = max(diag_err, float(np.max(np.abs(rep.diagonal - classical_enumerate(circuit, field).energies))))
        lanczos_err = max(lanczos_err, abs(ground_state_lanczos(rep).energy - ground_state_dense(rep).energy))
    two_level_err = 0.0
    for _ in range(1000):
        delta, gamma = rng.uniform(-1.0, 1.0), rng.uniform(1e-4, 0.1)
        res = ground_state_dense(build(Circuit([Cell((0.0, 0.0), gamma=gamma)]), UniformField((0.0, -delta))))
        energy, p = two_level_analytic(delta, gamma)
        two_level_err = max(two_level_err, abs(res.energy - energy), abs(res.polarizations[0] - p))
    ok = diag_err <= 1e-12 and lanczos_err <= 1e-9 and two_level_err <= 1e-10
    assert report("9 oracle equivalence (enumeration, Lanczos, two-level)", ok,
                  f"diag {diag_err:.1e} eV, Lanczos {lanczos_err:.1e} eV, two-level {two_level_err:.1e}")


def test_criterion_10_property_suite(report):
    rng = np.random.default_rng(10)
    worst = {"hermiticity": 0.0, "bound": 0.0, "norm": 0.0, "residual": 0.0, "reversal": 0.0}
    for _ in range(20):
        circuit = random_circuit(rng, int(rng.integers(1, 9)), int(rng.integers(0, 3)))
        rep = build(circuit, random_field(rng))
        h = rep.dense()
        res = ground_state_dense(rep)
        worst["hermiticity"] = max(worst["hermiticity"], float(np.max(np.abs(h - h.T))))
        worst["bound"] = max(worst["bound"], float(np.max(np.abs(res.polarizations))) - 1.0)
        worst["norm"] = max(worst["norm"], abs(np.linalg.norm(res.vector) - 1.0))
        worst["residual"] = max(worst["residual"], res.residual(rep) / max(1.0, abs(res.energy)))
    for circuit in (transverse_array(2, 1.0, 1.0, 0.001), transverse_array(3, 1.0, 1.0, 0.010),
                    longitudinal_array(3, 2.0, 1.0, 0.001), field_input_circuit(3, 5, gamma=0.010)):
        sigma = mirror_permutation(circuit)
        for ey in (0.02, 0.3, 0.6):
            plus, minus = pol(circuit, ey), pol(circuit, -ey)
            worst["reversal"] = max(worst["reversal"], float(np.max(np.abs(minus + plus[list(sigma)]))))
    ok = (worst["hermiticity"] <= 1e-12 and worst["bound"] <= 1e-9 and worst["norm"] <= 1e-10
          and worst["residual"] <= 1e-8 and worst["reversal"] <= 1e-6)
    assert report("10 property suite", ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


def test_criterion_11_performance(report):
    circuit = field_input_circuit(3, 13, gamma=0.010)
    assert circuit.n_cells == 16
    t0 = time.perf_counter()
    res = ground_state_lanczos(build(circuit, UniformField((0.0, 0.1 * E_O))))
    big = time.perf_counter() - t0
    slowest, slowest_name = 0.0, ""
    for name in SCENARIOS:
        t0 = time.perf_counter()
        scenario(name)
        dt = time.perf_counter() - t0
        if dt > slowest:
            slowest, slowest_name = dt, name
    ok = big < 60.0 and slowest < 1.0 and math.isfinite(res.energy)
    assert report("11 performance (2^16 Lanczos, 256-state scenarios)", ok,
                  f"16 cells {big:.1f}s in {res.iterations} iterations, slowest scenario {slowest_name} {slowest:.2f}s")


@pytest.mark.parametrize("name", SCENARIOS)
def test_scenarios_are_desk_scale(name):
    result = scenario(name)
    for sweep in result.sweeps.values():
        assert sweep.polarizations.shape[1] <= 8
