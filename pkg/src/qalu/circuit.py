"""
Circuit intermediate representation.

Contains:
    - Gate: the gate alphabet (QFT gates plus the hardware basis CX/ID/RZ/SX/X)
    - GateOp: one frozen operation (kind, qubits, angle, classical bit)
    - Circuit: frozen, ordered op sequence with qubit/clbit counts
    - structural algebra: append, extend, compose, inverse, gate_count
    - the one-op-per-line text format: dumps / loads

Qubit 0 is the least-significant bit of a basis index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .exceptions import (
    CircuitError,
    CircuitParseError,
    MeasurementOrderError,
    NotInvertibleError,
)

TWO_PI = 2.0 * math.pi
_FOUR_PI = 4.0 * math.pi


class Gate(str, Enum):
    H = "h"
    X = "x"
    SX = "sx"
    SXDG = "sxdg"
    ID = "id"
    RZ = "rz"
    P = "p"
    CP = "cp"
    CX = "cx"
    SWAP = "swap"
    MEASURE = "measure"
    BARRIER = "barrier"

    @property
    def n_qubits(self) -> int | None:
        """Operand count, or None for BARRIER (any number)."""
        if self in _TWO_QUBIT:
            return 2
        if self is Gate.BARRIER:
            return None
        return 1

    @property
    def has_angle(self) -> bool:
        return self in _ANGLED


_TWO_QUBIT = frozenset({Gate.CP, Gate.CX, Gate.SWAP})
_ANGLED = frozenset({Gate.RZ, Gate.P, Gate.CP})
NON_GATES = frozenset({Gate.MEASURE, Gate.BARRIER})
_SELF_INVERSE = frozenset({Gate.H, Gate.X, Gate.ID, Gate.CX, Gate.SWAP, Gate.BARRIER})


def canonical_angle(theta: float) -> float:
    """Fold an angle into (-2pi, 2pi].

    The period is 4pi so RZ keeps its exact matrix, not just its phase class.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise CircuitError(f"angle must be finite, got {theta}")
    t = math.remainder(theta, _FOUR_PI)
    if t <= -TWO_PI:
        t += _FOUR_PI
    return t + 0.0  # normalizes -0.0


@dataclass(frozen=True)
class GateOp:
    kind: Gate
    qubits: tuple[int, ...]
    angle: float | None = None
    clbit: int | None = None

    def __post_init__(self):
        kind = Gate(self.kind)
        object.__setattr__(self, "kind", kind)
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)

        arity = kind.n_qubits
        if arity is None:
            if not qubits:
                raise CircuitError("barrier needs at least one qubit")
        elif len(qubits) != arity:
            raise CircuitError(f"{kind.value} takes {arity} qubit(s), got {len(qubits)}")
        if any(q < 0 for q in qubits):
            raise CircuitError(f"negative qubit index in {qubits}")
        if len(set(qubits)) != len(qubits):
            raise CircuitError(f"{kind.value} operands must be distinct, got {qubits}")

        if kind.has_angle:
            if self.angle is None:
                raise CircuitError(f"{kind.value} requires an angle")
            object.__setattr__(self, "angle", canonical_angle(self.angle))
        elif self.angle is not None:
            raise CircuitError(f"{kind.value} takes no angle")

        if kind is Gate.MEASURE:
            if self.clbit is None or int(self.clbit) < 0:
                raise CircuitError("measure requires a non-negative classical bit")
            object.__setattr__(self, "clbit", int(self.clbit))
        elif self.clbit is not None:
            raise CircuitError(f"{kind.value} takes no classical bit")

    def remap(self, qubit_map, clbit_map=None) -> GateOp:
        """Same op with qubits (and clbit) relabeled through the given maps."""
        clbit = self.clbit
        if clbit is not None and clbit_map is not None:
            clbit = clbit_map[clbit]
        return GateOp(self.kind, tuple(qubit_map[q] for q in self.qubits), self.angle, clbit)

    def inverse(self) -> GateOp:
        if self.kind is Gate.MEASURE:
            raise NotInvertibleError("measurement has no inverse")
        if self.kind in _ANGLED:
            return GateOp(self.kind, self.qubits, -self.angle)
        if self.kind is Gate.SX:
            return GateOp(Gate.SXDG, self.qubits)
        if self.kind is Gate.SXDG:
            return GateOp(Gate.SX, self.qubits)
        return self

    def __str__(self) -> str:
        parts = [self.kind.value]
        if self.angle is not None:
            parts.append(repr(self.angle))
        parts.extend(f"q{q}" for q in self.qubits)
        if self.clbit is not None:
            parts.append(f"-> c{self.clbit}")
        return " ".join(parts)


# short constructors
def h(q): return GateOp(Gate.H, (q,))
def x(q): return GateOp(Gate.X, (q,))
def sx(q): return GateOp(Gate.SX, (q,))
def sxdg(q): return GateOp(Gate.SXDG, (q,))
def id_(q): return GateOp(Gate.ID, (q,))
def rz(theta, q): return GateOp(Gate.RZ, (q,), theta)
def p(theta, q): return GateOp(Gate.P, (q,), theta)
def cp(theta, control, target): return GateOp(Gate.CP, (control, target), theta)
def cx(control, target): return GateOp(Gate.CX, (control, target))
def swap(a, b): return GateOp(Gate.SWAP, (a, b))
def measure(q, c): return GateOp(Gate.MEASURE, (q,), clbit=c)
def barrier(*qs): return GateOp(Gate.BARRIER, tuple(qs))


def _check_ops(n_qubits: int, n_clbits: int, ops: Iterable[GateOp], measured: bool) -> bool:
    """Validate ops against circuit bounds; returns whether a MEASURE has been seen."""
    for op in ops:
        if not isinstance(op, GateOp):
            raise CircuitError(f"expected GateOp, got {type(op).__name__}")
        for q in op.qubits:
            if q >= n_qubits:
                raise CircuitError(f"qubit {q} out of range for {n_qubits}-qubit circuit")
        if op.kind is Gate.MEASURE:
            if op.clbit >= n_clbits:
                raise CircuitError(f"classical bit {op.clbit} out of range ({n_clbits} clbits)")
            measured = True
        elif measured and op.kind is not Gate.BARRIER:
            raise MeasurementOrderError(f"{op.kind.value} after measurement")
    return measured


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    n_clbits: int = 0
    ops: tuple[GateOp, ...] = ()
    name: str = ""
    _measured: bool = field(default=False, init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.n_qubits) < 1:
            raise CircuitError(f"circuit needs at least one qubit, got {self.n_qubits}")
        if int(self.n_clbits) < 0:
            raise CircuitError(f"negative classical bit count {self.n_clbits}")
        object.__setattr__(self, "ops", tuple(self.ops))
        measured = _check_ops(self.n_qubits, self.n_clbits, self.ops, False)
        object.__setattr__(self, "_measured", measured)

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __add__(self, other: Circuit) -> Circuit:
        return compose(self, other)

    @property
    def has_measurements(self) -> bool:
        return self._measured

    def append(self, op: GateOp) -> Circuit:
        return append(self, op)

    def extend(self, ops: Iterable[GateOp]) -> Circuit:
        return extend(self, ops)

    def inverse(self) -> Circuit:
        return inverse(self)

    def without_measurements(self) -> Circuit:
        ops = tuple(op for op in self.ops if op.kind is not Gate.MEASURE)
        return Circuit(self.n_qubits, self.n_clbits, ops, self.name)

    def measured_qubits(self) -> dict[int, int]:
        """Map classical bit -> measured qubit (last write wins)."""
        return {op.clbit: op.qubits[0] for op in self.ops if op.kind is Gate.MEASURE}

    def count_ops(self) -> dict[Gate, int]:
        counts: dict[Gate, int] = {}
        for op in self.ops:
            counts[op.kind] = counts.get(op.kind, 0) + 1
        return counts

    def __str__(self) -> str:
        return dumps(self)


def new_circuit(n_qubits: int, n_clbits: int = 0, name: str = "") -> Circuit:
    return Circuit(n_qubits, n_clbits, (), name)


def _with_ops(c: Circuit, ops: tuple[GateOp, ...], measured: bool) -> Circuit:
    # bypass full re-validation; caller already checked the new ops
    out = object.__new__(Circuit)
    for attr, value in (("n_qubits", c.n_qubits), ("n_clbits", c.n_clbits),
                        ("ops", ops), ("name", c.name), ("_measured", measured)):
        object.__setattr__(out, attr, value)
    return out


def append(c: Circuit, op: GateOp) -> Circuit:
    """Return a new circuit with ``op`` appended; ``c`` is left untouched."""
    measured = _check_ops(c.n_qubits, c.n_clbits, (op,), c.has_measurements)
    return _with_ops(c, c.ops + (op,), measured)


def extend(c: Circuit, ops: Iterable[GateOp]) -> Circuit:
    ops = tuple(ops)
    measured = _check_ops(c.n_qubits, c.n_clbits, ops, c.has_measurements)
    return _with_ops(c, c.ops + ops, measured)


def compose(
    first: Circuit,
    second: Circuit,
    qubits: Iterable[int] | None = None,
    clbits: Iterable[int] | None = None,
) -> Circuit:
    """Append ``second`` after ``first``.

    ``qubits[i]`` is the qubit of ``first`` that receives qubit ``i`` of
    ``second`` (identity when omitted); likewise ``clbits``.
    """
    qmap = list(range(second.n_qubits)) if qubits is None else list(qubits)
    if len(qmap) != second.n_qubits:
        raise CircuitError(f"qubit map has {len(qmap)} entries, need {second.n_qubits}")
    if len(set(qmap)) != len(qmap):
        raise CircuitError(f"qubit map is not injective: {qmap}")
    cmap = list(range(second.n_clbits)) if clbits is None else list(clbits)
    if len(cmap) != second.n_clbits:
        raise CircuitError(f"clbit map has {len(cmap)} entries, need {second.n_clbits}")
    return extend(first, (op.remap(qmap, cmap) for op in second.ops))


def inverse(c: Circuit) -> Circuit:
    """Reverse the op order and invert each gate."""
    if c.has_measurements:
        raise NotInvertibleError(f"circuit {c.name!r} contains measurements")
    ops = tuple(op.inverse() for op in reversed(c.ops))
    name = c.name[:-3] if c.name.endswith("_dg") else (c.name + "_dg" if c.name else "")
    return Circuit(c.n_qubits, c.n_clbits, ops, name)


def gate_count(c: Circuit, include_kinds: Iterable[Gate | str] | None = None) -> int:
    """Number of ops, MEASURE and BARRIER excluded unless asked for."""
    if include_kinds is None:
        return sum(1 for op in c.ops if op.kind not in NON_GATES)
    kinds = {Gate(k) for k in include_kinds}
    return sum(1 for op in c.ops if op.kind in kinds)


# ---------------------------------------------------------------------------
# text format

def dumps(c: Circuit) -> str:
    lines = []
    if c.name:
        lines.append(f"name {c.name}")
    lines.append(f"qubits {c.n_qubits}")
    lines.append(f"clbits {c.n_clbits}")
    lines.extend(str(op) for op in c.ops)
    return "\n".join(lines) + "\n"


def _index(token: str, prefix: str, lineno: int) -> int:
    if not token.startswith(prefix) or not token[1:].isdigit():
        raise CircuitParseError(f"expected {prefix}<index>, got {token!r}", lineno)
    return int(token[1:])


def loads(text: str) -> Circuit:
    """Parse the one-op-per-line text format produced by :func:`dumps`."""
    n_qubits = n_clbits = None
    name = ""
    ops: list[tuple[int, GateOp]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        head = head.lower()
        rest = rest.strip()
        if head == "name":
            name = rest
            continue
        if head in ("qubits", "clbits"):
            if not rest.isdigit():
                raise CircuitParseError(f"{head} needs a count, got {rest!r}", lineno)
            if head == "qubits":
                n_qubits = int(rest)
            else:
                n_clbits = int(rest)
            continue
        try:
            kind = Gate(head)
        except ValueError:
            raise CircuitParseError(f"unknown gate {head!r}", lineno) from None

        clbit = None
        if "->" in rest:
            rest, _, target = rest.partition("->")
            clbit = _index(target.strip(), "c", lineno)
        tokens = rest.split()
        angle = None
        if kind.has_angle:
            if not tokens:
                raise CircuitParseError(f"{head} needs an angle", lineno)
            try:
                angle = float(tokens.pop(0))
            except ValueError:
                raise CircuitParseError(f"bad angle in {raw.strip()!r}", lineno) from None
        qubits = tuple(_index(t, "q", lineno) for t in tokens)
        try:
            ops.append((lineno, GateOp(kind, qubits, angle, clbit)))
        except CircuitError as exc:
            raise CircuitParseError(str(exc), lineno) from None

    if n_qubits is None:
        raise CircuitParseError("missing 'qubits <n>' header")
    n_clbits = 0 if n_clbits is None else n_clbits
    if n_qubits < 1:
        raise CircuitParseError("circuit needs at least one qubit")
    measured = False
    for lineno, op in ops:
        try:
            measured = _check_ops(n_qubits, n_clbits, (op,), measured)
        except CircuitError as exc:
            raise CircuitParseError(str(exc), lineno) from None
    return Circuit(n_qubits, n_clbits, tuple(op for _, op in ops), name)


def load(path) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(c: Circuit, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(c))
