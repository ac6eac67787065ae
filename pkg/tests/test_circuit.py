import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qalu.circuit import (
    Circuit, Gate, GateOp, append, canonical_angle, compose, cp, cx, dumps, gate_count, h,
    inverse, loads, measure, new_circuit, p, rz, swap, sx, sxdg, x, barrier, id_,
)
from qalu.exceptions import CircuitError, CircuitParseError, MeasurementOrderError, NotInvertibleError
from qalu.qft import build_qft
from qalu.statevector import unitary_of


def test_new_circuit():
    c = new_circuit(4, 2, "qalu2")
    assert (c.n_qubits, c.n_clbits, c.name, len(c)) == (4, 2, "qalu2", 0)
    assert len(new_circuit(1, 0, "h")) == 0
    with pytest.raises(CircuitError):
        new_circuit(0, 0, "x")


def test_append():
    c = new_circuit(1)
    c2 = append(c, h(0))
    assert len(c2) == 1 and len(c) == 0
    with pytest.raises(CircuitError):
        append(new_circuit(2), cx(0, 0))
    with pytest.raises(CircuitError):
        append(new_circuit(2), h(2))
    with pytest.raises(CircuitError):
        append(new_circuit(1, 1), measure(0, 1))


def test_no_gate_after_measure():
    c = new_circuit(2, 1).append(measure(0, 0))
    with pytest.raises(MeasurementOrderError):
        c.append(x(0))
    # measurements and barriers may still follow
    c.append(barrier(0, 1)).append(measure(1, 0))


def test_append_keeps_history():
    c1 = new_circuit(2).append(h(0))
    c2 = c1.append(cx(0, 1))
    c3 = c1.append(x(1))
    assert c2.ops[0] is c1.ops[0] and c3.ops[0] is c1.ops[0]
    assert c1.ops == (h(0),)


def test_gateop_validation():
    with pytest.raises(CircuitError):
        GateOp(Gate.RZ, (0,))
    with pytest.raises(CircuitError):
        GateOp(Gate.H, (0,), 1.0)
    with pytest.raises(CircuitError):
        GateOp(Gate.MEASURE, (0,))
    with pytest.raises(CircuitError):
        GateOp(Gate.CX, (0,))
    with pytest.raises(CircuitError):
        rz(math.inf, 0)


@pytest.mark.parametrize("theta, expected", [
    (0.0, 0.0),
    (math.pi, math.pi),
    (2 * math.pi, 2 * math.pi),
    (-2 * math.pi, 2 * math.pi),
    (3 * math.pi, -math.pi),
    (-0.0, 0.0),
])
def test_canonical_angle(theta, expected):
    assert canonical_angle(theta) == pytest.approx(expected, abs=1e-12)


@given(st.floats(-1e6, 1e6, allow_nan=False))
def test_canonical_angle_range_and_idempotent(theta):
    t = canonical_angle(theta)
    assert -2 * math.pi < t <= 2 * math.pi
    assert canonical_angle(t) == t
    # same RZ matrix: difference is a multiple of 4pi
    k = (theta - t) / (4 * math.pi)
    assert abs(k - round(k)) < 1e-6


def test_inverse_examples():
    assert inverse(Circuit(1, 0, (h(0),))).ops == (h(0),)
    c = Circuit(2, 0, (p(math.pi / 2, 0), cx(0, 1)))
    assert inverse(c).ops == (cx(0, 1), p(-math.pi / 2, 0))
    assert inverse(Circuit(1, 0, (sx(0),))).ops == (sxdg(0),)


def test_inverse_rejects_measure():
    c = new_circuit(1, 1).append(measure(0, 0))
    with pytest.raises(NotInvertibleError):
        inverse(c)


def test_gate_count():
    assert gate_count(build_qft(3)) == 7
    assert gate_count(build_qft(2)) == 4
    assert gate_count(new_circuit(3)) == 0
    c = Circuit(2, 2, (h(0), barrier(0, 1), cx(0, 1), measure(0, 0), measure(1, 1)))
    assert gate_count(c) == 2
    assert gate_count(c, [Gate.MEASURE]) == 2
    assert gate_count(build_qft(3), ["cp"]) == 3


def test_compose_with_qubit_map():
    a = new_circuit(3)
    b = Circuit(2, 0, (cx(0, 1),))
    assert compose(a, b, qubits=[2, 0]).ops == (cx(2, 0),)
    with pytest.raises(CircuitError):
        compose(a, b, qubits=[1, 1])


# --- random circuits for property tests -------------------------------------

angles = st.floats(-10, 10, allow_nan=False)


@st.composite
def gate_ops(draw, n):
    kind = draw(st.sampled_from([k for k in Gate if k not in (Gate.MEASURE, Gate.BARRIER)]))
    if kind.n_qubits == 2:
        if n < 2:
            kind = Gate.H
        else:
            a, b = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
            return GateOp(kind, (a, b), draw(angles) if kind.has_angle else None)
    q = draw(st.integers(0, n - 1))
    return GateOp(kind, (q,), draw(angles) if kind.has_angle else None)


@st.composite
def circuits(draw, max_qubits=4, max_ops=12):
    n = draw(st.integers(1, max_qubits))
    ops = draw(st.lists(gate_ops(n), max_size=max_ops))
    return Circuit(n, 0, tuple(ops), "rand")


@given(circuits())
def test_inverse_involution(c):
    assert inverse(inverse(c)).ops == c.ops


@settings(max_examples=40, deadline=None)
@given(circuits(max_qubits=6, max_ops=15))
def test_compose_with_inverse_is_identity(c):
    import numpy as np
    u = unitary_of(c + inverse(c))
    assert np.max(np.abs(u - np.eye(2 ** c.n_qubits))) < 1e-12


@given(circuits())
def test_text_round_trip(c):
    assert loads(dumps(c)) == c


def test_text_format_example():
    text = """
    # two-input ALU fragment
    qubits 2
    clbits 1
    h q0
    cp 1.5707963267948966 q0 q1   # controlled phase
    swap q0 q1
    barrier q0 q1
    measure q1 -> c0
    """
    c = loads(text)
    assert c.n_qubits == 2 and c.n_clbits == 1
    assert [op.kind for op in c.ops] == [Gate.H, Gate.CP, Gate.SWAP, Gate.BARRIER, Gate.MEASURE]
    assert c.ops[1].angle == math.pi / 2
    assert loads(dumps(c)) == c


@pytest.mark.parametrize("text, line", [
    ("qubits 2\nfoo q0\n", 2),
    ("qubits 2\nh q5\n", 2),
    ("qubits 2\n\ncx q0 q0\n", 3),
    ("qubits 1\nrz abc q0\n", 2),
    ("qubits 1\nclbits 1\nmeasure q0 -> c0\nh q0\n", 4),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(CircuitParseError) as err:
        loads(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_parse_missing_header():
    with pytest.raises(CircuitParseError):
        loads("h q0\n")


def test_round_trip_preserves_extreme_angles():
    c = Circuit(2, 0, (rz(1e-300, 0), cp(-2 * math.pi, 0, 1), id_(1), swap(0, 1)))
    assert loads(dumps(c)) == c
