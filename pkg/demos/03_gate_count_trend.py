"""
Serial vs parallel addition cost
================================

Adding 2**n one-bit numbers: one Fourier register with many phase fans,
against a loop of full QFT/add/iQFT rounds.
"""
from qalu.analysis import chart_data, report, to_csv

rows = report(8)
print(to_csv(rows))

###############################################################################
# Basis-gate counts after lowering to CX/ID/RZ/SX/X.
print(to_csv(report(5, transpiled=True)))

###############################################################################
# Optional plot, if matplotlib is around.
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    plt.semilogy([r.inputs for r in rows], [r.serial_count for r in rows], "ko-", label="serial")
    plt.semilogy([r.inputs for r in rows], [r.parallel_count for r in rows], "ro-", label="parallel")
    plt.xscale("log", base=2)
    plt.xlabel("one-bit inputs")
    plt.ylabel("gates")
    plt.legend()
    plt.savefig("gate_counts.png", dpi=120)
print(chart_data(rows))
