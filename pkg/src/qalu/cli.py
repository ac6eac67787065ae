"""Command-line front end: ``qalu <command> ...``.

Exit codes: 0 success, 1 internal failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys

from . import analysis, circuit as circ
from .alu import build_fourier_adder, build_qalu_multi, expected_bits, nand_supported, run_qalu
from .noise import NoiseParams, load_calibration, noise_from_calibration, sample_noisy
from .qft import build_iqft, build_qft
from .softcore import RegisterFile, run_program
from .statevector import sample
from .transpile import Layout, load_coupling_map, transpile

MAX_INPUTS = 8
MAX_TABLE_INPUTS = 5

# every package error is a ValueError; bad paths are OSErrors
_USAGE_ERRORS = (ValueError, OSError)


class UsageError(Exception):
    pass


def _bit_list(text: str) -> list[int]:
    try:
        bits = [int(b) for b in text.split(",") if b.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated bits, got {text!r}") from None
    if any(b not in (0, 1) for b in bits):
        raise argparse.ArgumentTypeError(f"inputs must be 0 or 1, got {text!r}")
    return bits


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _add_run_options(p: argparse.ArgumentParser):
    p.add_argument("--shots", type=_positive, default=4096)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--noise", help="JSON file with p1, p2, readout_flip")
    p.add_argument("--calibration", help="calibration table; derives per-qubit noise")
    p.add_argument("--d1", type=float, default=35.0, help="1-qubit gate time [ns]")
    p.add_argument("--d2", type=float, default=300.0, help="2-qubit gate time [ns]")
    p.add_argument("--readout", type=float, default=0.0,
                   help="readout flip probability with --calibration")


def _noise(args):
    if args.noise and args.calibration:
        raise UsageError("use either --noise or --calibration, not both")
    if args.noise:
        with open(args.noise, encoding="utf-8") as fh:
            data = json.load(fh)
        unknown = set(data) - {"p1", "p2", "readout_flip"}
        if unknown:
            raise UsageError(f"unknown noise keys {sorted(unknown)}")
        return NoiseParams(**{k: float(v) for k, v in data.items()})
    if args.calibration:
        return noise_from_calibration(load_calibration(args.calibration), args.d1, args.d2, args.readout)
    return None


def cmd_qalu(args) -> int:
    k = len(args.inputs)
    if not 2 <= k <= MAX_INPUTS:
        raise UsageError(f"--in needs 2..{MAX_INPUTS} bits, got {k}")
    if args.select and not nand_supported(k):
        raise UsageError(f"NAND needs a power-of-two input count, got {k}")
    c, layout = build_qalu_multi(k)
    res = run_qalu(c, layout, args.inputs, args.select, args.shots, args.seed, _noise(args))
    hist = res.histogram
    if args.json:
        print(json.dumps({"mode": res.mode.value, "bits": res.bits,
                          "probability": res.success_probability,
                          "histogram": hist.to_dict(), "shots": hist.shots, "seed": hist.seed}))
    else:
        order = "".join(f"c{i}" for i in reversed(range(layout.width)))
        print(f"mode: {res.mode.value}")
        print(f"bits: {res.bits}")
        print(f"probability: {res.success_probability:.3f}")
        print(f"histogram ({order}, {hist.shots} shots, seed {hist.seed}):")
        print(hist.ascii_chart())
    return 0


def cmd_truth_table(args) -> int:
    k = args.k
    if not 2 <= k <= MAX_TABLE_INPUTS:
        raise UsageError(f"--k must be 2..{MAX_TABLE_INPUTS}, got {k}")
    if args.select and not nand_supported(k):
        raise UsageError(f"NAND needs a power-of-two input count, got {k}")
    c, layout = build_qalu_multi(k)
    ok = True
    print("inputs  expected  simulated  probability  status")
    for bits in itertools.product((0, 1), repeat=k):
        want = expected_bits(bits, args.select)
        res = run_qalu(c, layout, bits, args.select, args.shots, args.seed)
        status = "PASS" if res.bits == want else "FAIL"
        ok &= status == "PASS"
        label = "".join(map(str, bits))
        print(f"{label:<7} {want:<9} {res.bits:<10} {res.success_probability:<12.3f} {status}")
    return 0 if ok else 1


def cmd_gate_count(args) -> int:
    rows = analysis.report(args.n_max, transpiled=args.transpiled)
    sys.stdout.write(analysis.to_csv(rows))
    if args.chart:
        with open(args.chart, "w", encoding="utf-8") as fh:
            fh.write(analysis.chart_data(rows))
    return 0


def _write(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_build(args) -> int:
    if args.kind == "qalu2":
        c, _ = build_qalu_multi(2)
    elif args.kind == "qalu":
        c, _ = build_qalu_multi(args.k)
    elif args.kind == "qft":
        c = build_qft(args.n, not args.no_swaps)
    elif args.kind == "iqft":
        c = build_iqft(args.n, not args.no_swaps)
    else:
        c = build_fourier_adder(args.m)
    _write(circ.dumps(c), args.output)
    return 0


def cmd_transpile(args) -> int:
    c = circ.load(args.infile)
    cmap = load_coupling_map(args.map)
    layout = Layout.parse(args.layout) if args.layout else None
    routed = transpile(c, cmap, layout)
    header = (f"# initial layout {routed.initial_layout}\n"
              f"# final layout {routed.final_layout}\n")
    _write(header + circ.dumps(routed.circuit), args.output)
    return 0


def cmd_simulate(args) -> int:
    c = circ.load(args.infile)
    noise = _noise(args)
    init = args.init or "0" * c.n_qubits
    if noise is None:
        hist = sample(c, init, args.shots, args.seed)
    else:
        hist = sample_noisy(c, noise, init, args.shots, args.seed)
    if args.json:
        print(json.dumps({"histogram": hist.to_dict(), "shots": hist.shots, "seed": hist.seed}))
    else:
        print(hist.to_json())
        print(hist.ascii_chart())
    return 0


def _registers(text: str, width: int) -> RegisterFile:
    values = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep or not value.strip().isdigit():
            raise UsageError(f"bad register assignment {item!r}, expected name=value")
        values[name.strip().lstrip("$")] = int(value)
    try:
        return RegisterFile(values, width)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_softcore(args) -> int:
    regs = _registers(args.regs, args.width)
    if args.program in (None, "-"):
        lines = sys.stdin.read().splitlines()
    else:
        with open(args.program, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    print(f"        {regs}")
    for instr, regs in run_program(lines, regs, args.shots, args.seed, _noise(args)):
        print(f"{instr}  ->  {regs}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qalu", description="QFT-based quantum ALU toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qalu", help="run the ALU on one input assignment")
    p.add_argument("--in", dest="inputs", type=_bit_list, required=True, help="e.g. 1,1")
    p.add_argument("--select", type=int, choices=(0, 1), default=0, help="0=ADD, 1=NAND")
    _add_run_options(p)
    p.set_defaults(func=cmd_qalu)

    p = sub.add_parser("truth-table", help="exhaustive check against the classical oracle")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--select", type=int, choices=(0, 1), default=0)
    p.add_argument("--shots", type=_positive, default=1024)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_truth_table)

    p = sub.add_parser("gate-count", help="serial vs parallel adder gate counts")
    p.add_argument("--n-max", type=_positive, default=8)
    p.add_argument("--transpiled", action="store_true", help="add basis-gate count columns")
    p.add_argument("--chart", help="write chart-data JSON here")
    p.set_defaults(func=cmd_gate_count)

    p = sub.add_parser("build", help="write a circuit in the text format")
    p.add_argument("kind", choices=("qalu2", "qalu", "qft", "iqft", "adder"))
    p.add_argument("--k", type=int, default=4, help="ALU inputs")
    p.add_argument("--n", type=_positive, default=3, help="QFT qubits")
    p.add_argument("--m", type=_positive, default=2, help="adder width")
    p.add_argument("--no-swaps", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("transpile", help="lower to CX/ID/RZ/SX/X and route")
    p.add_argument("infile")
    p.add_argument("--map", help="coupling-map JSON (default: $QALU_COUPLING_MAP or bundled)")
    p.add_argument("--layout", help="logical:physical pairs, e.g. 0:1,1:0,2:2,3:3")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_transpile)

    p = sub.add_parser("simulate", help="sample a circuit file")
    p.add_argument("infile")
    p.add_argument("--init", help="initial basis state, most-significant qubit first")
    _add_run_options(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("softcore", help="execute add/nand instructions on the ALU")
    p.add_argument("program", nargs="?", help="instruction file (default: stdin)")
    p.add_argument("--regs", default="", help="initial registers, e.g. s0=1,s1=1")
    p.add_argument("--width", type=int, default=1)
    _add_run_options(p)
    p.set_defaults(func=cmd_softcore, shots=1024)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, *_USAGE_ERRORS) as exc:
        print(f"qalu {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"qalu {args.command}: internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
