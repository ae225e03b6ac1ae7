import numpy as np
import pytest
from _circuits import random_circuit, random_field

from qcafield import (SizeError, UniformField, basis_index, build, classical_enumerate,
                      reference_field, transverse_array, two_level_analytic)

E_O = reference_field()


def test_two_level_examples():
    assert two_level_analytic(0.0, 0.001) == (-0.001, -0.0)
    assert two_level_analytic(0.42176, 0.001)[1] == pytest.approx(-0.999989, abs=1e-6)
    energy, pol = two_level_analytic(0.3, 0.0)
    assert (energy, pol) == (pytest.approx(-0.15), -1.0)
    assert two_level_analytic(0.0, 0.0) == (0.0, 0.0)
    with pytest.raises(ValueError):
        two_level_analytic(0.1, -1.0)


@pytest.mark.parametrize("ey", [0.1 * E_O, 0.5 * E_O, 0.9 * E_O])
def test_transverse_n2_weak_field_degenerate(ey):
    spec = classical_enumerate(transverse_array(2, 1.0, 1.0, 0.0), UniformField((0, ey)))
    assert spec.min_degenerate
    assert set(spec.argmin) == {basis_index([1, 0]), basis_index([0, 1])}


@pytest.mark.parametrize("ey", [1.1 * E_O, 2 * E_O])
def test_transverse_n2_strong_field_aligns(ey):
    spec = classical_enumerate(transverse_array(2, 1.0, 1.0, 0.0), UniformField((0, ey)))
    assert spec.argmin == (basis_index([1, 1]),)
    assert not spec.min_degenerate


@pytest.mark.parametrize("ey, bits", [
    (0.1 * E_O, [1, 0, 1]),
    (1.9 * E_O, [1, 0, 1]),
    (2.1 * E_O, [1, 1, 1]),
])
def test_transverse_n3(ey, bits):
    spec = classical_enumerate(transverse_array(3, 1.0, 1.0, 0.0), UniformField((0, ey)))
    assert spec.argmin == (basis_index(bits),)


def test_size_limit():
    with pytest.raises(SizeError):
        classical_enumerate(transverse_array(21), UniformField())


@pytest.mark.parametrize("seed", range(6))
def test_sorted_diagonal_with_gamma_zero(seed):
    rng = np.random.default_rng(100 + seed)
    circuit = random_circuit(rng, int(rng.integers(1, 11)), int(rng.integers(0, 3))).with_gamma(0.0)
    field = random_field(rng)
    rep = build(circuit, field)
    h = rep.dense()
    np.testing.assert_allclose(np.sort(np.diag(h)), np.sort(classical_enumerate(circuit, field).energies),
                               rtol=0, atol=1e-12)
    np.testing.assert_allclose(np.linalg.eigvalsh(h), np.sort(np.diag(h)), atol=1e-12)
