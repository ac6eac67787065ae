"""
Lowering to the hardware basis {CX, ID, RZ, SX, X} and coupling-map routing.

Contains:
    - decompose(): rewrite every gate into the basis (exact up to global phase)
    - CouplingMap / Layout: device connectivity and logical->physical placement
    - route(): greedy shortest-path SWAP insertion, no lookahead
    - verify_equivalence(): unitary comparison modulo global phase

Rewrite rules:
    H       -> RZ(pi/2) SX RZ(pi/2)
    P(t)    -> RZ(t)
    SXDG    -> RZ(pi) SX RZ(pi)
    SWAP    -> CX(a,b) CX(b,a) CX(a,b)
    CP(t)   -> RZ(t/2)_c  CX  RZ(-t/2)_t  CX  RZ(t/2)_t
"""
from __future__ import annotations

import json
import math
import os
from collections import deque
from dataclasses import dataclass
from importlib import resources
from typing import Iterable

import numpy as np

from .circuit import Circuit, Gate, GateOp, cx, rz, sx
from .exceptions import CircuitError, UnsupportedGateError
from .statevector import _evolve, unitary_of

BASIS = frozenset({Gate.CX, Gate.ID, Gate.RZ, Gate.SX, Gate.X})
_PASSTHROUGH = BASIS | {Gate.MEASURE, Gate.BARRIER}

COUPLING_MAP_ENV = "QALU_COUPLING_MAP"


def _lower(op: GateOp) -> list[GateOp]:
    kind = op.kind
    if kind in _PASSTHROUGH:
        return [op]
    if kind is Gate.H:
        (q,) = op.qubits
        return [rz(math.pi / 2, q), sx(q), rz(math.pi / 2, q)]
    if kind is Gate.P:
        return [rz(op.angle, op.qubits[0])]
    if kind is Gate.SXDG:
        (q,) = op.qubits
        return [rz(math.pi, q), sx(q), rz(math.pi, q)]
    if kind is Gate.SWAP:
        a, b = op.qubits
        return [cx(a, b), cx(b, a), cx(a, b)]
    if kind is Gate.CP:
        c, t = op.qubits
        half = op.angle / 2
        return [rz(half, c), cx(c, t), rz(-half, t), cx(c, t), rz(half, t)]
    raise UnsupportedGateError(f"no basis rewrite for {kind.value}")


def decompose(c: Circuit) -> Circuit:
    ops = [new for op in c.ops for new in _lower(op)]
    return Circuit(c.n_qubits, c.n_clbits, tuple(ops), c.name)


def in_basis(c: Circuit) -> bool:
    return all(op.kind in _PASSTHROUGH for op in c.ops)


# ---------------------------------------------------------------------------
# connectivity

@dataclass(frozen=True)
class CouplingMap:
    n_physical: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        edges = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise CircuitError(f"self-loop on qubit {a}")
            if not (0 <= a < self.n_physical and 0 <= b < self.n_physical):
                raise CircuitError(f"edge ({a}, {b}) outside {self.n_physical} physical qubits")
            edges.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(edges))
        if len(self._component(0)) != self.n_physical:
            raise CircuitError("coupling map is disconnected")

    def neighbors(self, q: int) -> list[int]:
        return sorted({b for a, b in self.edges if a == q} | {a for a, b in self.edges if b == q})

    def is_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def _component(self, start: int) -> set[int]:
        seen = {start}
        todo = [start]
        while todo:
            for nb in self.neighbors(todo.pop()):
                if nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        return seen

    def shortest_path(self, a: int, b: int) -> list[int]:
        """BFS path from a to b; neighbors visited lowest index first."""
        prev = {a: None}
        queue = deque([a])
        while queue:
            q = queue.popleft()
            if q == b:
                break
            for nb in self.neighbors(q):
                if nb not in prev:
                    prev[nb] = q
                    queue.append(nb)
        path = [b]
        while path[-1] != a:
            path.append(prev[path[-1]])
        return path[::-1]

    def to_dict(self) -> dict:
        return {"n_physical": self.n_physical, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_dict(cls, data: dict) -> CouplingMap:
        return cls(int(data["n_physical"]), frozenset(tuple(e) for e in data["edges"]))


def load_coupling_map(path=None) -> CouplingMap:
    """Read a coupling-map JSON file.

    Without a path, ``$QALU_COUPLING_MAP`` is used if set, else the bundled
    7-qubit map.
    """
    path = path or os.environ.get(COUPLING_MAP_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            return CouplingMap.from_dict(json.load(fh))
    text = resources.files("qalu.data").joinpath("nairobi_map.json").read_text(encoding="utf-8")
    return CouplingMap.from_dict(json.loads(text))


@dataclass(frozen=True)
class Layout:
    """Logical qubit i sits on physical qubit ``physical[i]``."""

    physical: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "physical", tuple(int(p) for p in self.physical))
        if len(set(self.physical)) != len(self.physical):
            raise CircuitError(f"layout collision: {self.physical}")

    def __getitem__(self, logical: int) -> int:
        return self.physical[logical]

    def __len__(self) -> int:
        return len(self.physical)

    @classmethod
    def trivial(cls, n: int) -> Layout:
        return cls(tuple(range(n)))

    @classmethod
    def parse(cls, text: str) -> Layout:
        """``"0:1,1:0,2:2"`` -> logical 0 on physical 1, ..."""
        pairs = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            lhs, sep, rhs = item.partition(":")
            if not sep or not lhs.strip().isdigit() or not rhs.strip().isdigit():
                raise CircuitError(f"bad layout entry {item!r}, expected logical:physical")
            if int(lhs) in pairs:
                raise CircuitError(f"logical qubit {lhs.strip()} placed twice")
            pairs[int(lhs)] = int(rhs)
        if sorted(pairs) != list(range(len(pairs))):
            raise CircuitError(f"layout must cover logical qubits 0..{len(pairs) - 1}")
        return cls(tuple(pairs[i] for i in range(len(pairs))))

    def __str__(self) -> str:
        return ",".join(f"{i}:{p}" for i, p in enumerate(self.physical))


@dataclass(frozen=True)
class RoutedCircuit:
    circuit: Circuit
    initial_layout: Layout
    final_layout: Layout

    def measured_physical(self) -> dict[int, int]:
        """clbit -> physical qubit it is read from."""
        return self.circuit.measured_qubits()


def route(c: Circuit, cmap: CouplingMap, initial: Layout | None = None) -> RoutedCircuit:
    """Place ``c`` on ``cmap`` and insert SWAPs (as 3 CX) for distant CXs.

    For each non-adjacent CX the control walks along a shortest path until
    it neighbors the target. Measurements follow the qubit's current
    position so classical bits keep their meaning.
    """
    initial = Layout.trivial(c.n_qubits) if initial is None else initial
    if len(initial) != c.n_qubits:
        raise CircuitError(f"layout covers {len(initial)} qubits, circuit has {c.n_qubits}")
    if any(not 0 <= p < cmap.n_physical for p in initial.physical):
        raise CircuitError(f"layout {initial} does not fit {cmap.n_physical} physical qubits")
    for op in c.ops:
        if len(op.qubits) == 2 and op.kind is not Gate.CX:
            raise CircuitError(f"route needs a decomposed circuit, found {op.kind.value}")

    l2p = list(initial.physical)
    p2l: dict[int, int] = {p: l for l, p in enumerate(l2p)}
    out: list[GateOp] = []

    def swap_physical(a: int, b: int):
        out.extend((cx(a, b), cx(b, a), cx(a, b)))
        la, lb = p2l.pop(a, None), p2l.pop(b, None)
        if la is not None:
            l2p[la] = b
            p2l[b] = la
        if lb is not None:
            l2p[lb] = a
            p2l[a] = lb

    for op in c.ops:
        if op.kind is Gate.CX:
            ctrl, tgt = op.qubits
            if not cmap.is_edge(l2p[ctrl], l2p[tgt]):
                path = cmap.shortest_path(l2p[ctrl], l2p[tgt])
                for a, b in zip(path[:-2], path[1:-1]):
                    swap_physical(a, b)
            out.append(cx(l2p[ctrl], l2p[tgt]))
        else:
            out.append(op.remap(l2p))

    routed = Circuit(cmap.n_physical, c.n_clbits, tuple(out), c.name)
    return RoutedCircuit(routed, initial, Layout(tuple(l2p)))


def transpile(c: Circuit, cmap: CouplingMap | None = None, initial: Layout | None = None) -> RoutedCircuit:
    cmap = load_coupling_map() if cmap is None else cmap
    return route(decompose(c), cmap, initial)


def _embed(index: int, placement: Iterable[int]) -> int:
    return sum(((index >> l) & 1) << p for l, p in enumerate(placement))


def logical_unitary(routed: RoutedCircuit, leak_tol: float = 1e-8) -> np.ndarray:
    """Undo the placement and final permutation of a routed circuit.

    Column j is the routed circuit's action on logical basis j (idle physical
    qubits in |0>) read back at the final logical positions.
    """
    c = routed.circuit.without_measurements()
    n = len(routed.initial_layout)
    dim = 2 ** n
    cols = np.zeros((2 ** c.n_qubits, dim), dtype=complex)
    for j in range(dim):
        cols[_embed(j, routed.initial_layout.physical), j] = 1.0
    cols = _evolve(cols, c.ops, c.n_qubits)
    rows = [_embed(i, routed.final_layout.physical) for i in range(dim)]
    u = cols[rows, :]
    leaked = 1.0 - np.min(np.sum(np.abs(u) ** 2, axis=0))
    if leaked > leak_tol:
        raise CircuitError(f"routed circuit leaks {leaked:.3g} out of the logical subspace")
    return u


def equivalent_up_to_phase(ua: np.ndarray, ub: np.ndarray, tol: float = 1e-8) -> tuple[bool, float]:
    if ua.shape != ub.shape:
        raise CircuitError(f"unitary shapes differ: {ua.shape} vs {ub.shape}")
    k = np.unravel_index(np.argmax(np.abs(ub)), ub.shape)
    ratio = ua[k] / ub[k]
    phase = ratio / abs(ratio) if abs(ratio) > 1e-12 else 1.0
    dev = float(np.max(np.abs(ua - phase * ub)))
    return dev <= tol, dev


def verify_equivalence(a, b, tol: float = 1e-8) -> tuple[bool, float]:
    """Compare two circuits (or unitaries / routed circuits) modulo global phase.

    Measurements are stripped first. Returns ``(equal, max deviation)``.
    """
    def as_matrix(x):
        if isinstance(x, RoutedCircuit):
            return logical_unitary(x)
        if isinstance(x, Circuit):
            return unitary_of(x.without_measurements())
        return np.asarray(x, dtype=complex)

    if isinstance(a, Circuit) and isinstance(b, Circuit) and a.n_qubits != b.n_qubits:
        raise CircuitError(f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}")
    return equivalent_up_to_phase(as_matrix(a), as_matrix(b), tol)


def transpile_qalu(circuit: Circuit, layout, cmap: CouplingMap | None = None,
                   initial: Layout | None = None):
    """Transpile an ALU circuit and carry its qubit roles onto physical qubits."""
    routed = transpile(circuit, cmap, initial)
    return routed, layout.remap(routed.initial_layout.physical)
