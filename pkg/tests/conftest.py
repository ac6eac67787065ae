import functools

import numpy as np
import pytest

from qalu.circuit import Gate

_1Q = {
    Gate.H: np.array([[1, 1], [1, -1]]) / np.sqrt(2),
    Gate.X: np.array([[0, 1], [1, 0]]),
    Gate.SX: np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]) / 2,
    Gate.SXDG: np.array([[1 - 1j, 1 + 1j], [1 + 1j, 1 - 1j]]) / 2,
    Gate.ID: np.eye(2),
}


def _one_qubit(op):
    if op.kind in _1Q:
        return np.asarray(_1Q[op.kind], dtype=complex)
    if op.kind is Gate.RZ:
        return np.diag([np.exp(-0.5j * op.angle), np.exp(0.5j * op.angle)])
    if op.kind is Gate.P:
        return np.diag([1, np.exp(1j * op.angle)])
    raise KeyError(op.kind)


def _embed_1q(m, q, n):
    # kron order: leftmost factor is the most significant qubit
    out = np.eye(1)
    for k in reversed(range(n)):
        out = np.kron(out, m if k == q else np.eye(2))
    return out


def _permutation_or_phase(op, n):
    dim = 2 ** n
    u = np.zeros((dim, dim), dtype=complex)
    a, b = op.qubits
    for i in range(dim):
        ba, bb = (i >> a) & 1, (i >> b) & 1
        j, amp = i, 1.0
        if op.kind is Gate.CX and ba:
            j = i ^ (1 << b)
        elif op.kind is Gate.SWAP and ba != bb:
            j = i ^ (1 << a) ^ (1 << b)
        elif op.kind is Gate.CP and ba and bb:
            amp = np.exp(1j * op.angle)
        u[j, i] = amp
    return u


def reference_unitary(circuit):
    """Brute-force unitary built from Kronecker products and explicit basis maps.

    Shares nothing with the simulator's tensor kernels.
    """
    n = circuit.n_qubits
    u = np.eye(2 ** n, dtype=complex)
    for op in circuit.ops:
        if op.kind in (Gate.BARRIER, Gate.MEASURE):
            continue
        if len(op.qubits) == 1:
            g = _embed_1q(_one_qubit(op), op.qubits[0], n)
        else:
            g = _permutation_or_phase(op, n)
        u = g @ u
    return u


@pytest.fixture
def ref_unitary():
    return reference_unitary


@functools.lru_cache(maxsize=None)
def dft_reference(n):
    """Explicit double loop over the DFT definition."""
    N = 2 ** n
    m = np.empty((N, N), dtype=complex)
    for y in range(N):
        for x in range(N):
            m[y, x] = np.exp(2j * np.pi * x * y / N) / np.sqrt(N)
    return m


# --- acceptance summary -------------------------------------------------------

_ACCEPTANCE: list[tuple[str, bool, str]] = []


class _Recorder:
    def check(self, label: str, ok: bool, detail: str = ""):
        _ACCEPTANCE.append((label, bool(ok), detail))
        print(f"[{'PASS' if ok else 'FAIL'}] {label} {detail}")
        assert ok, f"{label}: {detail}"


@pytest.fixture
def criterion():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {label} {detail}")
