import json

import pytest

from qalu.analysis import (
    chart_data, count_parallel, count_serial, parallel_adder_circuit, report,
    serial_adder_circuit, to_csv,
)
from qalu.circuit import Gate, gate_count
from qalu.exceptions import CircuitError


@pytest.mark.parametrize("n, parallel, serial", [(1, 10, 10), (2, 23, 51), (3, 52, 196)])
def test_counts(n, parallel, serial):
    assert count_parallel(n) == parallel
    assert count_serial(n) == serial


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_formulas_match_generated_circuits(n):
    assert gate_count(parallel_adder_circuit(n)) == count_parallel(n)
    assert gate_count(serial_adder_circuit(n)) == count_serial(n)


def test_parallel_circuit_excludes_select_and_measure():
    c = parallel_adder_circuit(2)
    kinds = c.count_ops()
    assert Gate.MEASURE not in kinds and Gate.CX not in kinds


def test_invalid_exponent():
    for f in (count_parallel, count_serial, report):
        with pytest.raises(CircuitError):
            f(0)


def test_report():
    rows = report(2)
    assert [(r.n, r.serial_count, r.parallel_count) for r in rows] == [(1, 10, 10), (2, 51, 23)]
    rows = report(8)
    assert all(r.serial_count > r.parallel_count for r in rows[1:])
    for a, b in zip(rows, rows[1:]):
        assert b.serial_count > a.serial_count and b.parallel_count > a.parallel_count


def test_asymptotics():
    n = 12
    k, m = 2 ** n, n + 1
    assert count_parallel(n) / k == pytest.approx(m, rel=0.01)
    qft = m + m * (m - 1) // 2 + m // 2
    assert count_serial(n) / k == pytest.approx(2 * qft + m, rel=0.01)


def test_exports():
    rows = report(2, transpiled=True)
    text = to_csv(rows)
    lines = text.strip().splitlines()
    assert lines[0] == "n,inputs,serial,parallel,serial_transpiled,parallel_transpiled"
    assert lines[1].startswith("1,2,10,10,")
    data = json.loads(chart_data(rows))
    assert data["inputs"] == [2, 4] and data["parallel"] == [10, 23]
    assert to_csv(report(1)) == "n,inputs,serial,parallel\n1,2,10,10\n"
