import math

import numpy as np
import pytest

from qalu.circuit import Gate, gate_count, inverse
from qalu.exceptions import CircuitError, ResourceLimitError
from qalu.qft import QftParams, build_iqft, build_qft, dft_matrix
from qalu.statevector import run, unitary_of

from conftest import dft_reference, reference_unitary


def test_one_qubit_is_hadamard():
    assert [op.kind for op in build_qft(1)] == [Gate.H]
    assert [op.kind for op in build_iqft(1)] == [Gate.H]


def test_three_qubit_structure():
    c = build_qft(QftParams(3))
    counts = c.count_ops()
    assert counts == {Gate.H: 3, Gate.CP: 3, Gate.SWAP: 1}
    angles = [op.angle for op in c if op.kind is Gate.CP]
    assert angles == [math.pi / 2, math.pi / 4, math.pi / 2]
    assert len(c) == 7


def test_swap_free_two_qubit():
    c = build_qft(2, include_swaps=False)
    assert [op.kind for op in c] == [Gate.H, Gate.CP, Gate.H]
    # output bits reversed relative to the DFT
    perm = [0, 2, 1, 3]
    np.testing.assert_allclose(unitary_of(c)[perm, :], dft_reference(2), atol=1e-10)


@pytest.mark.parametrize("n", range(1, 6))
def test_qft_matches_dft(n):
    u = unitary_of(build_qft(n))
    assert np.max(np.abs(u - dft_reference(n))) < 1e-10
    assert np.max(np.abs(reference_unitary(build_qft(n)) - dft_reference(n))) < 1e-10


@pytest.mark.parametrize("n", range(1, 7))
def test_gate_count_formula(n):
    counts = build_qft(n).count_ops()
    assert counts.get(Gate.H, 0) == n
    assert counts.get(Gate.CP, 0) == n * (n - 1) // 2
    assert counts.get(Gate.SWAP, 0) == n // 2


def test_iqft_is_inverse():
    assert build_iqft(3).ops == inverse(build_qft(3)).ops
    assert gate_count(build_iqft(3)) == 7
    c = build_qft(3) + build_iqft(3)
    for x in range(8):
        psi = run(c, x).amplitudes
        assert abs(psi[x] - 1) < 1e-12


def test_dft_matrix_values():
    np.testing.assert_allclose(dft_matrix(1), np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(dft_matrix(2)[:, 1], np.array([1, 1j, -1, -1j]) / 2, atol=1e-15)
    for n in range(1, 8):
        d = dft_matrix(n)
        assert np.max(np.abs(d.conj().T @ d - np.eye(2 ** n))) < 1e-12
        if n <= 6:
            assert np.max(np.abs(d - dft_reference(n))) < 1e-12


def test_dft_limits():
    with pytest.raises(ResourceLimitError):
        dft_matrix(11)
    with pytest.raises(CircuitError):
        QftParams(0)


@pytest.mark.parametrize("n", [2, 3])
def test_periodicity(n):
    N = 2 ** n
    c = build_qft(n)
    for x in range(N):
        a = run(c, x % N).amplitudes
        b = run(c, (x + N) % N).amplitudes
        assert np.array_equal(a, b)
