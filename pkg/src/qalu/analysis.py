"""
Serial vs parallel gate counts for adding 2**n one-bit numbers.

Both designs accumulate into the same (n+1)-qubit Fourier register.

parallel: one QFT, a fan of m controlled phases per extra input, one iQFT
    2*Q(m) + (k-1)*m
serial:   k-1 separate additions, each with its own QFT/iQFT pair
    (k-1)*(2*Q(m) + m)

with k = 2**n inputs, m = n + 1 and Q(m) = m + m(m-1)/2 + floor(m/2) the
gate count of an m-qubit QFT with swaps. Every H, CP, SWAP and CX counts as
one gate; measurements, barriers and the select CX are not part of the
adder and are left out.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .alu import add_one_phases, build_qalu_multi
from .circuit import Circuit, Gate, gate_count
from .exceptions import CircuitError
from .qft import qft_gate_count, qft_ops
from .transpile import decompose


@dataclass(frozen=True)
class GateCountRow:
    n: int
    serial_count: int
    parallel_count: int
    serial_transpiled: int | None = None
    parallel_transpiled: int | None = None

    @property
    def inputs(self) -> int:
        return 2 ** self.n


def _check(n: int) -> tuple[int, int]:
    if n < 1:
        raise CircuitError(f"need n >= 1, got {n}")
    return 2 ** n, n + 1


def count_parallel(n: int) -> int:
    k, m = _check(n)
    return 2 * qft_gate_count(m) + (k - 1) * m


def count_serial(n: int) -> int:
    k, m = _check(n)
    return (k - 1) * (2 * qft_gate_count(m) + m)


def parallel_adder_circuit(n: int) -> Circuit:
    """Adder portion of the 2**n-input ALU: drops the select CX and measurements."""
    _check(n)
    alu, _ = build_qalu_multi(2 ** n)
    ops = [op for op in alu.ops if op.kind not in (Gate.MEASURE, Gate.BARRIER)]
    # the final op before measurement is the select CX
    assert ops[-1].kind is Gate.CX and ops[-1].qubits[0] == 0
    return Circuit(alu.n_qubits, 0, tuple(ops[:-1]), f"parallel_adder{2 ** n}")


def serial_adder_circuit(n: int) -> Circuit:
    """k-1 back-to-back Fourier additions of one input each into the register."""
    k, m = _check(n)
    inputs = list(range(1, k + 1))
    reg = [inputs[0], *range(k + 1, k + m)]
    ops = []
    for q in inputs[1:]:
        ops += qft_ops(reg)
        ops += add_one_phases(q, reg)
        ops += [op.inverse() for op in reversed(qft_ops(reg))]
    return Circuit(k + m, 0, tuple(ops), f"serial_adder{k}")


def report(n_max: int, transpiled: bool = False) -> list[GateCountRow]:
    """Rows for n = 1..n_max; transpiled columns count basis gates after decompose()."""
    if n_max < 1:
        raise CircuitError(f"need n_max >= 1, got {n_max}")
    rows = []
    for n in range(1, n_max + 1):
        st = pt = None
        if transpiled:
            st = gate_count(decompose(serial_adder_circuit(n)))
            pt = gate_count(decompose(parallel_adder_circuit(n)))
        rows.append(GateCountRow(n, count_serial(n), count_parallel(n), st, pt))
    return rows


def to_csv(rows: list[GateCountRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    with_t = any(r.serial_transpiled is not None for r in rows)
    header = ["n", "inputs", "serial", "parallel"]
    if with_t:
        header += ["serial_transpiled", "parallel_transpiled"]
    writer.writerow(header)
    for r in rows:
        line = [r.n, r.inputs, r.serial_count, r.parallel_count]
        if with_t:
            line += [r.serial_transpiled, r.parallel_transpiled]
        writer.writerow(line)
    return buf.getvalue()


def chart_data(rows: list[GateCountRow]) -> str:
    """JSON series for external plotting."""
    data = {
        "model": "fixed (n+1)-qubit accumulator; serial pays QFT+iQFT per addition",
        "inputs": [r.inputs for r in rows],
        "serial": [r.serial_count for r in rows],
        "parallel": [r.parallel_count for r in rows],
    }
    if any(r.serial_transpiled is not None for r in rows):
        data["serial_transpiled"] = [r.serial_transpiled for r in rows]
        data["parallel_transpiled"] = [r.parallel_transpiled for r in rows]
    return json.dumps(data)
