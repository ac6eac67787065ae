import math

import pytest

from qalu.alu import build_qalu2, prepare_bits, run_qalu
from qalu.circuit import Circuit, h, measure, x
from qalu.exceptions import CalibrationParseError, CircuitError
from qalu.noise import (
    CalibrationRecord, NoiseParams, load_calibration, noise_from_calibration, parse_calibration,
    sample_noisy,
)
from qalu.statevector import sample

# 1 - exp(-35/120250) * exp(-35/31660), evaluated with mpmath at 30 digits
P1_QUBIT0_35NS = 0.00139558145415208480676212842907


@pytest.mark.parametrize("row, record", [
    ("0, 120.25, 31.66, 5.260", CalibrationRecord(0, 120.25, 31.66, 5.260)),
    ("5, 114.08, 20.73, 5.293", CalibrationRecord(5, 114.08, 20.73, 5.293)),
    ("6 121 114.03 5.129", CalibrationRecord(6, 121.0, 114.03, 5.129)),
])
def test_parse_rows(row, record):
    assert parse_calibration(row) == [record]


def test_parse_errors():
    with pytest.raises(CalibrationParseError) as err:
        parse_calibration("qubit,t1_us,t2_us,freq_ghz\n0, abc, 1, 1\n")
    assert (err.value.row, err.value.column) == (2, 2)
    with pytest.raises(CalibrationParseError):
        parse_calibration("0,1,1,1\n0,2,2,2\n")
    with pytest.raises(CalibrationParseError):
        parse_calibration("0,1,1\n")
    with pytest.raises(CalibrationParseError):
        parse_calibration("0,-1,1,1\n")


def test_parse_sorts_by_qubit():
    recs = parse_calibration("2,1,1,1\n0,2,2,2\n")
    assert [r.qubit for r in recs] == [0, 2]


def test_shipped_fixture():
    recs = load_calibration()
    assert len(recs) == 7
    assert recs[0] == CalibrationRecord(0, 120.25, 31.66, 5.260)
    assert recs[6] == CalibrationRecord(6, 121.0, 114.03, 5.129)


def test_noise_from_calibration_values():
    recs = load_calibration()
    zero = noise_from_calibration(recs, d1=0, d2=0)
    assert all(n.p1 == 0 and n.p2 == 0 for n in zero.values())
    noise = noise_from_calibration(recs, d1=35)
    assert noise[0].p1 == pytest.approx(P1_QUBIT0_35NS, rel=1e-12)
    longer = noise_from_calibration(recs, d1=70)
    assert all(longer[q].p1 > noise[q].p1 for q in noise)


def test_noise_params_validation():
    with pytest.raises(ValueError):
        NoiseParams(p1=1.5)
    with pytest.raises(ValueError):
        NoiseParams(readout_flip=-0.1)


def qalu_add_11():
    c, layout = build_qalu2()
    return c, prepare_bits(4, {1: 1, 2: 1})


@pytest.mark.parametrize("seed", [1, 2, 99])
def test_zero_noise_matches_sample(seed):
    c, init = qalu_add_11()
    assert sample_noisy(c, NoiseParams(), init, 4096, seed) == sample(c, init, 4096, seed)
    coin = Circuit(1, 1, (h(0), measure(0, 0)))
    assert sample_noisy(coin, NoiseParams(), "0", 999, seed) == sample(coin, "0", 999, seed)


def test_modal_outcome_survives_light_noise():
    c, init = qalu_add_11()
    hist = sample_noisy(c, NoiseParams(0.001, 0.01, 0.02), init, 4096, 1)
    assert hist.most_common()[0] == "10"
    assert sum(hist.counts.values()) == 4096
    assert len(hist.counts) > 1


def test_certain_readout_flip():
    c = Circuit(2, 2, (measure(0, 0), measure(1, 1)))
    hist = sample_noisy(c, NoiseParams(readout_flip=1.0), "00", 100, 4)
    assert hist.counts == {"11": 100}


def test_certain_gate_error_randomizes():
    # X followed by a certain Pauli error: X/Y flip back to 0, Z keeps 1
    c = Circuit(1, 1, (x(0), measure(0, 0)))
    hist = sample_noisy(c, NoiseParams(p1=1.0), "0", 30000, 8)
    assert hist.probability("0") == pytest.approx(2 / 3, abs=5 * math.sqrt(2 / 9 / 30000))


def test_deterministic():
    c, init = qalu_add_11()
    n = NoiseParams(0.01, 0.05, 0.03)
    assert sample_noisy(c, n, init, 2048, 17) == sample_noisy(c, n, init, 2048, 17)
    assert sample_noisy(c, n, init, 2048, 17) != sample_noisy(c, n, init, 2048, 18)


def test_per_qubit_noise_mapping():
    c, init = qalu_add_11()
    per_qubit = noise_from_calibration(load_calibration())
    hist = sample_noisy(c, per_qubit, init, 2048, 1)
    assert hist.most_common()[0] == "10"
    with pytest.raises(CircuitError):
        sample_noisy(c, {0: NoiseParams()}, init, 10, 1)


def test_degradation_monotone():
    c, layout = build_qalu2()
    shots = 16384
    freqs = [run_qalu(c, layout, (1, 1), 0, shots, 5, NoiseParams(0.001, p2, 0.02)).success_probability
             for p2 in (0, 0.005, 0.01, 0.02)]
    for a, b in zip(freqs, freqs[1:]):
        sigma = math.sqrt(a * (1 - a) / shots) + math.sqrt(b * (1 - b) / shots)
        assert b <= a + 3 * sigma
