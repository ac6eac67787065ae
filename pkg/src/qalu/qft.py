"""Quantum Fourier transform circuits and the dense DFT reference matrix."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, cp, h, inverse, swap
from .exceptions import CircuitError, ResourceLimitError
from .statevector import MAX_UNITARY_QUBITS


@dataclass(frozen=True)
class QftParams:
    n_qubits: int
    include_swaps: bool = True

    def __post_init__(self):
        if self.n_qubits < 1:
            raise CircuitError(f"QFT needs at least one qubit, got {self.n_qubits}")


def _params(p, include_swaps) -> QftParams:
    if isinstance(p, QftParams):
        return p
    return QftParams(int(p), include_swaps)


def qft_ops(qubits, include_swaps: bool = True) -> list:
    """QFT ops over ``qubits`` listed least-significant first."""
    qubits = list(qubits)
    n = len(qubits)
    ops = []
    for j in range(n - 1, -1, -1):
        ops.append(h(qubits[j]))
        for i in range(j - 1, -1, -1):
            ops.append(cp(math.pi / 2 ** (j - i), qubits[i], qubits[j]))
    if include_swaps:
        for i in range(n // 2):
            ops.append(swap(qubits[i], qubits[n - 1 - i]))
    return ops


def build_qft(p: QftParams | int, include_swaps: bool = True) -> Circuit:
    """n-qubit QFT: H then controlled phases on each qubit from the top down.

    With swaps the output register reads in natural significance order and
    the unitary equals :func:`dft_matrix`; without them the output bits are
    reversed.

    >>> [str(op) for op in build_qft(2, include_swaps=False)]
    ['h q1', 'cp 1.5707963267948966 q0 q1', 'h q0']
    """
    p = _params(p, include_swaps)
    ops = qft_ops(range(p.n_qubits), p.include_swaps)
    return Circuit(p.n_qubits, 0, tuple(ops), f"qft{p.n_qubits}")


def build_iqft(p: QftParams | int, include_swaps: bool = True) -> Circuit:
    p = _params(p, include_swaps)
    c = inverse(build_qft(p))
    return Circuit(c.n_qubits, 0, c.ops, f"iqft{p.n_qubits}")


def qft_gate_count(n: int, include_swaps: bool = True) -> int:
    return n + n * (n - 1) // 2 + (n // 2 if include_swaps else 0)


def dft_matrix(n: int) -> np.ndarray:
    """Entry (y, x) = exp(2 pi i x y / N) / sqrt(N), N = 2**n."""
    if n < 1:
        raise CircuitError(f"need n >= 1, got {n}")
    if n > MAX_UNITARY_QUBITS:
        raise ResourceLimitError(f"dft_matrix({n}) exceeds the {MAX_UNITARY_QUBITS}-qubit limit")
    N = 2 ** n
    k = np.arange(N)
    # reduce xy mod N in integers first so large products keep full precision
    return np.exp(2j * np.pi * (np.outer(k, k) % N) / N) / np.sqrt(N)
