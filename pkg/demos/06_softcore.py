"""
add / nand instructions on the ALU
==================================
"""
from qalu.softcore import RegisterFile, run_program

program = """
add  $t0, $s0, $s1
nand $t1, $s0, $s1
nand $t2, $s2, $s2
""".splitlines()

regs = RegisterFile({"s0": 1, "s1": 1, "s2": 0})
print("start:", regs)
for instr, regs in run_program(program, regs):
    print(f"{str(instr):<20} {regs}")

###############################################################################
# 3-bit words go through the Fourier adder.
wide = RegisterFile({"a": 7, "b": 5}, word_width=3)
for instr, wide in run_program(["add $c, $a, $b", "nand $d, $a, $b"], wide):
    print(f"{str(instr):<20} {wide}")
