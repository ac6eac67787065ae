"""
The ALU under Pauli and readout noise
=====================================

Fixed error rates first, then rates derived from the bundled T1/T2
calibration table. None of this is fitted to a hardware histogram.
"""
from qalu import NoiseParams, build_qalu2, load_calibration, noise_from_calibration, run_qalu

c, layout = build_qalu2()
for p2 in (0.0, 0.005, 0.01, 0.02, 0.05):
    res = run_qalu(c, layout, (1, 1), 0, shots=16384, seed=1, noise=NoiseParams(0.001, p2, 0.02))
    print(f"p2={p2:<6} mode={res.bits} freq={res.success_probability:.3f}")

###############################################################################
# Per-qubit rates from the calibration snapshot, 35 ns / 300 ns gates.
records = load_calibration()
for r in records:
    print(r)
noise = noise_from_calibration(records, d1=35, d2=300, readout_flip=0.02)
res = run_qalu(c, layout, (1, 1), 1, shots=16384, seed=1, noise=noise)
print("NAND(1,1):", res.bits, f"{res.success_probability:.3f}")
print(res.histogram.ascii_chart())
