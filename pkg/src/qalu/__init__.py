"""QFT-based quantum arithmetic logic unit: build, simulate, transpile, analyze."""
from .alu import (
    AluMode,
    AluResult,
    QaluLayout,
    build_fourier_adder,
    build_qalu2,
    build_qalu_multi,
    expected_bits,
    run_qalu,
)
from .circuit import Circuit, Gate, GateOp, compose, gate_count, inverse, new_circuit
from .noise import NoiseParams, load_calibration, noise_from_calibration, parse_calibration, sample_noisy
from .qft import QftParams, build_iqft, build_qft, dft_matrix
from .statevector import ShotHistogram, StateVector, apply, init_state, run, sample, unitary_of
from .transpile import CouplingMap, Layout, decompose, load_coupling_map, route, transpile, verify_equivalence

__version__ = "0.1.0"
