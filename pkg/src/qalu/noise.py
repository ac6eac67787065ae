"""
Calibration tables and a stochastic Pauli + readout noise model.

Noise is simulated with Pauli trajectories: after every gate a uniformly
random non-identity Pauli hits the gate's qubits with probability p1 (one
qubit) or p2 (two qubits), and each measured bit is flipped with
probability ``readout_flip``. Shots that draw the same error pattern share
one state-vector run.

Random streams, all derived from ``seed``:
    - outcome uniforms: ``default_rng(seed)``, identical to ``sample()``, so a
      zero-noise run reproduces the noiseless histogram bit for bit
    - gate errors: ``SeedSequence(seed, spawn_key=(1,))``, one row per shot
    - readout flips: ``SeedSequence(seed, spawn_key=(2,))``, one row per shot
"""
from __future__ import annotations

import math
import re
from collections.abc import Mapping
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .circuit import NON_GATES, Circuit
from .exceptions import CalibrationParseError, CircuitError
from .statevector import (
    ShotHistogram,
    _apply_pauli,
    _check_shots,
    _evolve,
    _apply_op,
    draw_indices,
    histogram_from_keys,
    init_state,
    measurement_map,
    outcome_keys,
)

DEFAULT_D1_NS = 35.0
DEFAULT_D2_NS = 300.0

_PAULI_1Q = "XYZ"
_PAULI_LABELS = "IXYZ"


@dataclass(frozen=True)
class CalibrationRecord:
    qubit: int
    t1: float          # microseconds
    t2: float          # microseconds
    frequency: float   # GHz


@dataclass(frozen=True)
class NoiseParams:
    p1: float = 0.0
    p2: float = 0.0
    readout_flip: float = 0.0
    d1: float = DEFAULT_D1_NS
    d2: float = DEFAULT_D2_NS

    def __post_init__(self):
        for name in ("p1", "p2", "readout_flip"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")

    @property
    def is_zero(self) -> bool:
        return self.p1 == 0 and self.p2 == 0 and self.readout_flip == 0


_SPLIT = re.compile(r"[,\s]+")


def parse_calibration(text: str) -> list[CalibrationRecord]:
    """Parse ``qubit, T1[us], T2[us], freq[GHz]`` rows (comma or whitespace separated).

    A header row whose first cell starts with "qubit" is skipped, as are
    blank lines and ``#`` comments. Row numbers in errors are file lines.
    """
    records: dict[int, CalibrationRecord] = {}
    for row, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cells = [c for c in _SPLIT.split(line) if c]
        if cells[0].lower().startswith("qubit"):
            continue
        if len(cells) != 4:
            raise CalibrationParseError(f"expected 4 cells, got {len(cells)}", row=row)
        values = []
        for col, cell in enumerate(cells, start=1):
            try:
                values.append(float(cell))
            except ValueError:
                raise CalibrationParseError(f"non-numeric cell {cell!r}", row, col) from None
        qubit, t1, t2, freq = values
        if qubit != int(qubit) or qubit < 0:
            raise CalibrationParseError(f"bad qubit index {cells[0]!r}", row, 1)
        for col, v in ((2, t1), (3, t2), (4, freq)):
            if not v > 0:
                raise CalibrationParseError(f"value must be positive, got {v}", row, col)
        qubit = int(qubit)
        if qubit in records:
            raise CalibrationParseError(f"duplicate qubit {qubit}", row=row, column=1)
        records[qubit] = CalibrationRecord(qubit, t1, t2, freq)
    return [records[q] for q in sorted(records)]


def load_calibration(path=None) -> list[CalibrationRecord]:
    """Read a calibration file; defaults to the bundled 7-qubit snapshot."""
    if path is None:
        text = resources.files("qalu.data").joinpath("nairobi_calibration.csv").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_calibration(text)


def decay_probability(duration_ns: float, t1_us: float, t2_us: float) -> float:
    p = 1.0 - math.exp(-duration_ns / (1e3 * t1_us)) * math.exp(-duration_ns / (1e3 * t2_us))
    return min(max(p, 0.0), 1.0)


def noise_from_calibration(records, d1: float = DEFAULT_D1_NS, d2: float = DEFAULT_D2_NS,
                           readout_flip: float = 0.0) -> dict[int, NoiseParams]:
    """Per-qubit error rates from T1/T2 decay over one gate duration.

    A crude decoherence proxy, not a fitted device model. For a two-qubit
    gate the sampler takes the worse of the two qubits' ``p2``.
    """
    if d1 < 0 or d2 < 0:
        raise ValueError("gate durations must be non-negative")
    return {
        r.qubit: NoiseParams(decay_probability(d1, r.t1, r.t2), decay_probability(d2, r.t1, r.t2),
                             readout_flip, d1, d2)
        for r in records
    }


def _per_qubit(noise, n_qubits: int):
    if isinstance(noise, NoiseParams):
        return lambda q: noise
    if isinstance(noise, Mapping):
        missing = [q for q in range(n_qubits) if q not in noise]
        if missing:
            raise CircuitError(f"no noise parameters for qubits {missing}")
        return lambda q: noise[q]
    raise TypeError(f"noise must be NoiseParams or a qubit mapping, got {type(noise).__name__}")


def _error_rate(op, lookup) -> float:
    if len(op.qubits) == 1:
        return lookup(op.qubits[0]).p1
    return max(lookup(q).p2 for q in op.qubits)


def _run_pattern(c: Circuit, psi0: np.ndarray, pattern: dict[int, int]) -> np.ndarray:
    n = c.n_qubits
    psi = psi0
    for i, op in enumerate(c.ops):
        if op.kind in NON_GATES:
            continue
        psi = _apply_op(psi, op, n)
        if i in pattern:
            v = pattern[i]
            if len(op.qubits) == 1:
                psi = _apply_pauli(psi, _PAULI_1Q[v % 3], op.qubits[0], n)
            else:
                first, second = divmod(v + 1, 4)
                psi = _apply_pauli(psi, _PAULI_LABELS[first], op.qubits[0], n)
                psi = _apply_pauli(psi, _PAULI_LABELS[second], op.qubits[1], n)
    return psi


def sample_noisy(c: Circuit, noise, initial="", shots: int = 4096, seed: int = 1) -> ShotHistogram:
    """Trajectory sampling of ``c`` under stochastic Pauli and readout noise."""
    shots = _check_shots(shots)
    pairs = measurement_map(c)
    lookup = _per_qubit(noise, c.n_qubits)

    gate_idx = [i for i, op in enumerate(c.ops) if op.kind not in NON_GATES]
    rates = np.array([_error_rate(c.ops[i], lookup) for i in gate_idx])
    readout = np.array([lookup(q).readout_flip for q, _ in pairs])

    uniforms = np.random.default_rng(seed).random(shots)
    gate_rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1,)))
    hits = gate_rng.random((shots, len(gate_idx))) < rates
    # 15 values: uniform over 2-qubit non-identity Paulis, and v % 3 is
    # uniform over X/Y/Z for single-qubit gates
    which = gate_rng.integers(0, 15, size=(shots, len(gate_idx)))

    psi0 = init_state(c.n_qubits, initial).amplitudes.reshape(-1, 1)
    groups: dict[tuple, list[int]] = {}
    for shot in np.flatnonzero(hits.any(axis=1)):
        cols = np.flatnonzero(hits[shot])
        key = tuple((gate_idx[j], int(which[shot, j])) for j in cols)
        groups.setdefault(key, []).append(shot)

    indices = np.empty(shots, dtype=np.int64)
    clean = np.ones(shots, dtype=bool)
    for key, members in groups.items():
        members = np.asarray(members)
        clean[members] = False
        probs = np.abs(_run_pattern(c, psi0, dict(key))[:, 0]) ** 2
        indices[members] = draw_indices(probs, uniforms[members])
    if clean.any():
        probs = np.abs(_evolve(psi0, c.ops, c.n_qubits)[:, 0]) ** 2
        indices[clean] = draw_indices(probs, uniforms[clean])

    keys = outcome_keys(indices, pairs)
    read_rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(2,)))
    flips = read_rng.random((shots, len(pairs))) < readout
    for col, (_, clbit) in enumerate(pairs):
        keys ^= flips[:, col].astype(np.int64) << clbit
    return histogram_from_keys(keys, c.n_clbits, shots, seed)
