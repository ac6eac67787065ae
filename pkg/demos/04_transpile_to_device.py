"""
Lowering the 2-input ALU onto a 7-qubit device
==============================================

Decompose into CX/ID/RZ/SX/X, route on the bundled coupling map, and check
the result is the same unitary up to global phase.
"""
import itertools

from qalu import build_qalu2, load_coupling_map, run_qalu, verify_equivalence
from qalu.transpile import Layout, transpile_qalu

c, layout = build_qalu2()
cmap = load_coupling_map()
print("edges:", sorted(cmap.edges))

routed, physical = transpile_qalu(c, layout, cmap, Layout.parse("0:1,1:0,2:2,3:3"))
print(routed.circuit.count_ops())
print("final layout:", routed.final_layout)
print("equivalent:", verify_equivalence(c, routed, 1e-8))

###############################################################################
# The routed circuit still computes the truth table.
for s, q0, q1 in itertools.product((0, 1), repeat=3):
    print(s, q0, q1, run_qalu(routed.circuit, physical, (q0, q1), s).bits)
