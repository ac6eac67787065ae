"""
The QFT circuit against the dense DFT matrix
============================================

Build n-qubit QFT circuits, simulate their unitaries and compare them with
the DFT matrix entry by entry.
"""
import numpy as np

from qalu import build_qft, dft_matrix, unitary_of

for n in range(1, 6):
    c = build_qft(n)
    dev = np.max(np.abs(unitary_of(c) - dft_matrix(n)))
    print(f"n={n}: {len(c):3d} gates, max |U - DFT| = {dev:.1e}")

###############################################################################
# The 3-qubit circuit: three H, three controlled phases, one swap.
print(build_qft(3))

###############################################################################
# Without the final swaps the output register comes out bit-reversed.
u = unitary_of(build_qft(2, include_swaps=False))
print(np.allclose(u[[0, 2, 1, 3], :], dft_matrix(2)))
