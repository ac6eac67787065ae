"""
QFT-based arithmetic logic unit circuits.

The ALU keeps a sum register in Fourier space: the first input ``q0`` is the
register's least-significant bit and the ancillas sit above it. Every other
input adds 1 to the register through a fan of controlled phases, the inverse
QFT brings the binary sum back, and a final CX from the select qubit flips
the top register bit. With ``S=0`` the register is the sum of the inputs.
With ``S=1`` and a power-of-two input count the top bit is set exactly when
every input is 1, so after the flip it reads NAND of the inputs.

Qubit order of the k-input circuit: ``[S, q0 .. q(k-1), A0 .. A(m-2)]`` with
``m = ceil(log2(k+1))`` register bits; classical bit ``c_l`` holds register
bit ``l``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .circuit import Circuit, barrier, cp, cx, measure
from .exceptions import CircuitError, NandUnsupportedError
from .qft import qft_ops
from .statevector import ShotHistogram, sample


class AluMode(str, Enum):
    ADD = "ADD"
    NAND = "NAND"


@dataclass(frozen=True)
class QaluLayout:
    select: int
    inputs: tuple[int, ...]
    ancillas: tuple[int, ...]
    result_clbits: tuple[int, ...]
    nand_supported: bool = True

    def __post_init__(self):
        idx = (self.select, *self.inputs, *self.ancillas)
        if len(set(idx)) != len(idx):
            raise CircuitError(f"layout indices must be distinct: {idx}")
        if len(self.inputs) < 2:
            raise CircuitError("the ALU needs at least two inputs")
        if len(self.ancillas) != register_width(len(self.inputs)) - 1:
            raise CircuitError(f"{len(self.inputs)} inputs need {register_width(len(self.inputs)) - 1} ancillas")

    @property
    def register(self) -> tuple[int, ...]:
        """Sum register, least-significant qubit first."""
        return (self.inputs[0], *self.ancillas)

    @property
    def width(self) -> int:
        return len(self.result_clbits)

    def remap(self, mapping) -> QaluLayout:
        """Relabel qubit indices, e.g. logical -> physical after routing."""
        return QaluLayout(mapping[self.select], tuple(mapping[q] for q in self.inputs),
                          tuple(mapping[q] for q in self.ancillas), self.result_clbits,
                          self.nand_supported)


@dataclass(frozen=True)
class AluResult:
    bits: str
    mode: AluMode
    success_probability: float
    histogram: ShotHistogram | None = None

    @property
    def value(self) -> int:
        return int(self.bits, 2)


def register_width(k: int) -> int:
    """ceil(log2(k + 1)): bits needed to hold a sum of k one-bit inputs."""
    return int(k).bit_length()


def nand_supported(k: int) -> bool:
    # top bit == AND of all inputs  <=>  k == 2**(m-1)
    return k >= 2 and k == 2 ** (register_width(k) - 1)


def expected_bits(inputs, select: int) -> str:
    """Classical oracle: binary sum, top bit complemented when select=1."""
    m = register_width(len(inputs))
    total = sum(int(b) for b in inputs)
    if select:
        total ^= 1 << (m - 1)
    return format(total, f"0{m}b")


def add_one_phases(control: int, register, scale: int = 1) -> list:
    """Controlled phases adding ``scale`` to a Fourier-space register."""
    m = len(register)
    ops = []
    for l, target in enumerate(register):
        exponent = m - 1 - l
        # phase 2*pi*scale*2**l / 2**m; multiples of 2*pi are dropped
        if scale * 2 ** l % 2 ** m == 0:
            continue
        ops.append(cp(math.pi * scale / 2 ** exponent, control, target))
    return ops


def build_qalu_multi(k: int, barriers: bool = False) -> tuple[Circuit, QaluLayout]:
    """k-input one-bit ALU computing ADD or NAND of all inputs in one pass.

    NAND is only meaningful when k is a power of two; for other widths the
    layout is flagged and :func:`run_qalu` refuses ``select=1``.
    """
    if k < 2:
        raise CircuitError(f"the ALU needs k >= 2 inputs, got {k}")
    m = register_width(k)
    select = 0
    inputs = tuple(range(1, k + 1))
    ancillas = tuple(range(k + 1, k + m))
    layout = QaluLayout(select, inputs, ancillas, tuple(range(m)), nand_supported(k))
    reg = layout.register
    stage = [barrier(*range(k + m))] if barriers else []

    ops = qft_ops(reg) + stage
    for q in inputs[1:]:
        ops += add_one_phases(q, reg)
    ops += stage
    ops += [op.inverse() for op in reversed(qft_ops(reg))]
    ops += stage
    ops.append(cx(select, reg[-1]))
    ops += [measure(q, c) for c, q in enumerate(reg)]
    return Circuit(k + m, m, tuple(ops), f"qalu{k}"), layout


def build_qalu2(barriers: bool = False) -> tuple[Circuit, QaluLayout]:
    """Two-input ALU over qubits [S, q0, q1, A]; c0 = sum, c1 = carry or NAND."""
    return build_qalu_multi(2, barriers)


def build_fourier_adder(m: int) -> Circuit:
    """In-place |a, b> -> |a + b mod 2**m, b>.

    Register ``a`` occupies qubits 0..m-1 and ``b`` qubits m..2m-1, both
    least-significant first.
    """
    if m < 1:
        raise CircuitError(f"adder width must be >= 1, got {m}")
    a = list(range(m))
    ops = qft_ops(a)
    for j in range(m):
        ops += add_one_phases(m + j, a, scale=2 ** j)
    ops += [op.inverse() for op in reversed(qft_ops(a))]
    return Circuit(2 * m, 0, tuple(ops), f"fourier_adder{m}")


def prepare_bits(n_qubits: int, assignments: dict[int, int]) -> str:
    """MSB-first bit-string with the given qubits set."""
    bits = ["0"] * n_qubits
    for q, v in assignments.items():
        bits[n_qubits - 1 - q] = "1" if v else "0"
    return "".join(bits)


def run_qalu(circuit: Circuit, layout: QaluLayout, inputs, select: int,
             shots: int = 4096, seed: int = 1, noise=None) -> AluResult:
    """Prepare inputs/select, sample, and return the modal result bits."""
    inputs = [int(b) for b in inputs]
    if len(inputs) != len(layout.inputs):
        raise CircuitError(f"expected {len(layout.inputs)} inputs, got {len(inputs)}")
    if any(b not in (0, 1) for b in inputs) or select not in (0, 1):
        raise CircuitError("inputs and select must be bits")
    if select and not layout.nand_supported:
        raise NandUnsupportedError(
            f"NAND needs a power-of-two input count, got {len(layout.inputs)}")

    assignments = dict(zip(layout.inputs, inputs))
    assignments[layout.select] = select
    initial = prepare_bits(circuit.n_qubits, assignments)
    if noise is None:
        hist = sample(circuit, initial, shots, seed)
    else:
        from .noise import sample_noisy
        hist = sample_noisy(circuit, noise, initial, shots, seed)

    # project the full classical register onto the result bits
    n_cl = circuit.n_clbits
    counts: dict[str, int] = {}
    for key, n in hist.counts.items():
        bits = "".join(key[n_cl - 1 - c] for c in reversed(layout.result_clbits))
        counts[bits] = counts.get(bits, 0) + n
    projected = ShotHistogram(hist.shots, counts, hist.seed)
    bits, n = projected.most_common()
    mode = AluMode.NAND if select else AluMode.ADD
    return AluResult(bits, mode, n / hist.shots, projected)
