"""
Two- and four-input ALU truth tables
====================================

S=0 adds the inputs, S=1 complements the top sum bit, which for a
power-of-two input count is NAND of all inputs.
"""
import itertools

from qalu import build_qalu2, build_qalu_multi, expected_bits, run_qalu

c, layout = build_qalu2()
print(c)
print("S q0 q1 -> c1c0")
for s, q0, q1 in itertools.product((0, 1), repeat=3):
    res = run_qalu(c, layout, (q0, q1), s)
    print(f"{s} {q0}  {q1}  -> {res.bits}  (p={res.success_probability:.3f})")

###############################################################################
# Four inputs share one 3-qubit Fourier register.
c4, layout4 = build_qalu_multi(4)
bad = [
    (ins, s)
    for ins in itertools.product((0, 1), repeat=4)
    for s in (0, 1)
    if run_qalu(c4, layout4, ins, s, shots=256).bits != expected_bits(ins, s)
]
print("4-input mismatches:", bad)
print("1+1+1+1 =", run_qalu(c4, layout4, (1, 1, 1, 1), 0).bits)
