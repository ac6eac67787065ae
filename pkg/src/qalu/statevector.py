"""
Dense state-vector simulation.

Amplitudes are stored as a flat complex128 array of length 2**n with qubit 0
as the least-significant bit of the index. Gates are applied by viewing the
array as an n-axis tensor (axis ``n - 1 - q`` belongs to qubit ``q``) and
contracting the gate matrix against the operand axes. A trailing batch axis
is carried through the kernels so :func:`unitary_of` evolves every basis
column in one pass.

Sampling uses numpy's PCG64 generator (``numpy.random.default_rng(seed)``).
One uniform draw per shot is inverted through the cumulative outcome
distribution, so a histogram is a pure function of
``(circuit, initial, shots, seed)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Gate, GateOp
from .exceptions import CircuitError, ResourceLimitError

MAX_UNITARY_QUBITS = 10
NORM_TOL = 1e-12

_S2 = 1.0 / np.sqrt(2.0)
_FIXED = {
    Gate.H: np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    Gate.X: np.array([[0, 1], [1, 0]], dtype=complex),
    Gate.SX: 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]),
    Gate.SXDG: 0.5 * np.array([[1 - 1j, 1 + 1j], [1 + 1j, 1 - 1j]]),
    Gate.ID: np.eye(2, dtype=complex),
    # two-qubit matrices: first operand is the high bit of the 4x4 index
    Gate.CX: np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    Gate.SWAP: np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex),
}

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def gate_matrix(op: GateOp) -> np.ndarray:
    """Unitary of a single op (2x2 or 4x4)."""
    kind = op.kind
    if kind in _FIXED:
        return _FIXED[kind]
    if kind is Gate.RZ:
        half = 0.5 * op.angle
        return np.diag([np.exp(-1j * half), np.exp(1j * half)])
    if kind is Gate.P:
        return np.diag([1.0, np.exp(1j * op.angle)]).astype(complex)
    if kind is Gate.CP:
        return np.diag([1.0, 1.0, 1.0, np.exp(1j * op.angle)]).astype(complex)
    raise CircuitError(f"{kind.value} has no unitary")


def _apply_matrix(psi: np.ndarray, mat: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    """Contract ``mat`` into ``psi`` (shape (2**n, batch)) on ``qubits``."""
    batch = psi.shape[1]
    k = len(qubits)
    tensor = psi.reshape((2,) * n + (batch,))
    axes = [n - 1 - q for q in qubits]
    gate = mat.reshape((2,) * (2 * k))
    out = np.tensordot(gate, tensor, axes=(list(range(k, 2 * k)), axes))
    out = np.moveaxis(out, list(range(k)), axes)
    return np.ascontiguousarray(out).reshape(2 ** n, batch)


def _apply_diagonal(psi: np.ndarray, op: GateOp, n: int) -> np.ndarray:
    # RZ / P / CP only touch phases; cheaper than a contraction
    idx = np.arange(2 ** n)
    if op.kind is Gate.CP:
        a, b = op.qubits
        mask = ((idx >> a) & 1) & ((idx >> b) & 1)
        phase = np.where(mask, np.exp(1j * op.angle), 1.0)
    elif op.kind is Gate.P:
        mask = (idx >> op.qubits[0]) & 1
        phase = np.where(mask, np.exp(1j * op.angle), 1.0)
    else:
        mask = (idx >> op.qubits[0]) & 1
        half = 0.5 * op.angle
        phase = np.where(mask, np.exp(1j * half), np.exp(-1j * half))
    return psi * phase[:, None]


def _apply_op(psi: np.ndarray, op: GateOp, n: int) -> np.ndarray:
    kind = op.kind
    if kind is Gate.BARRIER or kind is Gate.ID:
        return psi
    if kind is Gate.MEASURE:
        raise CircuitError("measurement cannot be applied as a gate; use sample()")
    if kind in (Gate.RZ, Gate.P, Gate.CP):
        return _apply_diagonal(psi, op, n)
    return _apply_matrix(psi, gate_matrix(op), op.qubits, n)


def _apply_pauli(psi: np.ndarray, label: str, qubit: int, n: int) -> np.ndarray:
    if label == "I":
        return psi
    return _apply_matrix(psi, PAULI[label], (qubit,), n)


def _evolve(psi: np.ndarray, ops, n: int) -> np.ndarray:
    for op in ops:
        if op.kind is Gate.MEASURE:
            continue
        psi = _apply_op(psi, op, n)
    return psi


@dataclass(frozen=True)
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != 2 ** self.n_qubits:
            raise CircuitError(f"{self.n_qubits} qubits need {2 ** self.n_qubits} amplitudes, got {amps.shape[0]}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __getitem__(self, index):
        return self.amplitudes[index]


def _parse_bits(n_qubits: int, bits) -> int:
    """Basis index for an MSB-first bit-string (``bits[-1]`` is qubit 0)."""
    if isinstance(bits, (int, np.integer)):
        if not 0 <= bits < 2 ** n_qubits:
            raise CircuitError(f"basis index {bits} out of range for {n_qubits} qubits")
        return int(bits)
    bits = str(bits)
    if len(bits) != n_qubits or set(bits) - {"0", "1"}:
        raise CircuitError(f"need a {n_qubits}-character bit-string, got {bits!r}")
    return int(bits, 2)


def init_state(n_qubits: int, basis_bits="") -> StateVector:
    """Computational basis state. ``basis_bits`` is MSB first: "10" means q1=1, q0=0."""
    if n_qubits < 1:
        raise CircuitError("state needs at least one qubit")
    amps = np.zeros(2 ** n_qubits, dtype=complex)
    amps[_parse_bits(n_qubits, basis_bits or "0" * n_qubits)] = 1.0
    return StateVector(n_qubits, amps)


def apply(state: StateVector, op: GateOp) -> StateVector:
    n = state.n_qubits
    if any(q >= n for q in op.qubits):
        raise CircuitError(f"{op} out of range for {n} qubits")
    psi = _apply_op(state.amplitudes.reshape(-1, 1), op, n)
    return StateVector(n, psi[:, 0])


def run(c: Circuit, initial="") -> StateVector:
    """Final pre-measurement state. ``initial`` is a bit-string, index or StateVector."""
    if isinstance(initial, StateVector):
        if initial.n_qubits != c.n_qubits:
            raise CircuitError(f"state has {initial.n_qubits} qubits, circuit {c.n_qubits}")
        psi = initial.amplitudes.reshape(-1, 1)
    else:
        psi = init_state(c.n_qubits, initial).amplitudes.reshape(-1, 1)
    return StateVector(c.n_qubits, _evolve(psi, c.ops, c.n_qubits)[:, 0])


def unitary_of(c: Circuit) -> np.ndarray:
    """Full 2**n x 2**n matrix; column j is ``run(c, j)``."""
    if c.has_measurements:
        raise CircuitError("unitary_of needs a measurement-free circuit")
    if c.n_qubits > MAX_UNITARY_QUBITS:
        raise ResourceLimitError(f"{c.n_qubits} qubits exceeds the {MAX_UNITARY_QUBITS}-qubit dense limit")
    dim = 2 ** c.n_qubits
    return _evolve(np.eye(dim, dtype=complex), c.ops, c.n_qubits)


# ---------------------------------------------------------------------------
# measurement

@dataclass(frozen=True)
class ShotHistogram:
    """Counts keyed by classical bit-string, most-significant bit first ("c1c0")."""

    shots: int
    counts: dict[str, int]
    seed: int | None = None

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("histogram counts do not sum to shots")

    def most_common(self) -> tuple[str, int]:
        # ties broken by the smaller bit-string so the mode is deterministic
        return min(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))

    def probability(self, bits: str) -> float:
        return self.counts.get(bits, 0) / self.shots

    def to_dict(self) -> dict[str, int]:
        return dict(sorted(self.counts.items()))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def ascii_chart(self, width: int = 40) -> str:
        top = max(self.counts.values())
        lines = []
        for bits, n in sorted(self.counts.items()):
            bar = "#" * max(1 if n else 0, round(width * n / top))
            lines.append(f"{bits} | {bar} {n} ({n / self.shots:.3f})")
        return "\n".join(lines)


def measurement_map(c: Circuit) -> list[tuple[int, int]]:
    """(qubit, clbit) pairs of the terminal measurements."""
    pairs = [(op.qubits[0], op.clbit) for op in c.ops if op.kind is Gate.MEASURE]
    if not pairs:
        raise CircuitError(f"circuit {c.name!r} has no measurements to sample")
    return pairs


def outcome_keys(indices: np.ndarray, pairs) -> np.ndarray:
    """Classical register value for each sampled basis index."""
    keys = np.zeros(indices.shape, dtype=np.int64)
    for qubit, clbit in pairs:
        bit = (indices >> qubit) & 1
        keys = (keys & ~(1 << clbit)) | (bit << clbit)
    return keys


def draw_indices(probs: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    return np.searchsorted(cdf, uniforms, side="right")


def histogram_from_keys(keys: np.ndarray, n_clbits: int, shots: int, seed) -> ShotHistogram:
    values, counts = np.unique(keys, return_counts=True)
    width = max(n_clbits, 1)
    table = {format(int(v), f"0{width}b"): int(n) for v, n in zip(values, counts)}
    return ShotHistogram(shots, table, seed)


def _check_shots(shots) -> int:
    if int(shots) < 1:
        raise CircuitError(f"shots must be >= 1, got {shots}")
    return int(shots)


def sample(c: Circuit, initial="", shots: int = 4096, seed: int = 1) -> ShotHistogram:
    """Sample terminal measurements of ``c`` started from basis ``initial``."""
    shots = _check_shots(shots)
    pairs = measurement_map(c)
    probs = run(c, initial).probabilities()
    uniforms = np.random.default_rng(seed).random(shots)
    keys = outcome_keys(draw_indices(probs, uniforms), pairs)
    return histogram_from_keys(keys, c.n_clbits, shots, seed)
