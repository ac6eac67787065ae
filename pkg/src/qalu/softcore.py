"""
A toy soft-core: MIPS-style ``add``/``nand`` instructions executed on the ALU.

One-bit registers run on the two-input ALU directly. Wider words (up to 3
bits) add through the m-bit Fourier adder and NAND bit by bit on the
two-input ALU. The destination of an ADD keeps the carry, so it may hold one
bit more than ``word_width``; such a value cannot be used as an operand.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .alu import build_fourier_adder, build_qalu2, prepare_bits, run_qalu
from .circuit import Circuit, measure
from .exceptions import CircuitError, InstructionParseError, UnsupportedInstructionError
from .statevector import sample

MAX_WORD_WIDTH = 3

_LINE = re.compile(r"^\s*([A-Za-z]+)\s+\$(\w+)\s*,\s*\$(\w+)\s*,\s*\$(\w+)\s*$")


class Opcode(str, Enum):
    ADD = "add"
    NAND = "nand"


@dataclass(frozen=True)
class Instruction:
    opcode: Opcode
    dest: str
    src1: str
    src2: str

    def __str__(self) -> str:
        return f"{self.opcode.value} ${self.dest}, ${self.src1}, ${self.src2}"


@dataclass(frozen=True)
class RegisterFile:
    values: dict[str, int] = field(default_factory=dict)
    word_width: int = 1

    def __post_init__(self):
        if not 1 <= self.word_width <= MAX_WORD_WIDTH:
            raise ValueError(f"word_width must be 1..{MAX_WORD_WIDTH}, got {self.word_width}")
        for name, v in self.values.items():
            if not 0 <= v < 2 ** (self.word_width + 1):
                raise ValueError(f"${name} = {v} does not fit {self.word_width}-bit word plus carry")

    def __getitem__(self, name: str) -> int:
        return self.values[name]

    def operand(self, name: str) -> int:
        if name not in self.values:
            raise CircuitError(f"unknown register ${name}")
        v = self.values[name]
        if v >= 2 ** self.word_width:
            raise CircuitError(f"${name} = {v} is wider than the {self.word_width}-bit word")
        return v

    def write(self, name: str, value: int) -> RegisterFile:
        return RegisterFile({**self.values, name: value}, self.word_width)

    def __str__(self) -> str:
        return " ".join(f"${k}={v}" for k, v in sorted(self.values.items()))


def decode(text: str) -> Instruction:
    m = _LINE.match(text)
    if not m:
        raise InstructionParseError(f"cannot parse {text.strip()!r}; expected '<op> $rd, $rs, $rt'")
    op, rd, rs, rt = m.groups()
    try:
        opcode = Opcode(op.lower())
    except ValueError:
        raise UnsupportedInstructionError(f"unsupported opcode {op!r}") from None
    return Instruction(opcode, rd, rs, rt)


def _bits(value: int, width: int) -> list[int]:
    return [(value >> i) & 1 for i in range(width)]


def _wide_add(a: int, b: int, width: int, shots: int, seed: int, noise=None) -> int:
    # one extra bit on the accumulator so the carry survives the modular add
    m = width + 1
    adder = build_fourier_adder(m)
    c = Circuit(adder.n_qubits, m, adder.ops, adder.name).extend(measure(q, q) for q in range(m))
    assignments = {q: bit for q, bit in enumerate(_bits(a, m))}
    assignments.update({m + q: bit for q, bit in enumerate(_bits(b, m))})
    initial = prepare_bits(c.n_qubits, assignments)
    if noise is None:
        hist = sample(c, initial, shots, seed)
    else:
        from .noise import sample_noisy
        hist = sample_noisy(c, noise, initial, shots, seed)
    return int(hist.most_common()[0], 2)


def execute(instr: Instruction, regs: RegisterFile, shots: int = 1024, seed: int = 1,
            noise=None) -> RegisterFile:
    """Run one instruction; returns a new register file with ``dest`` written."""
    a = regs.operand(instr.src1)
    b = regs.operand(instr.src2)
    width = regs.word_width
    circuit, layout = build_qalu2()

    if instr.opcode is Opcode.ADD:
        if width == 1:
            result = run_qalu(circuit, layout, (a, b), 0, shots, seed, noise).value
        else:
            result = _wide_add(a, b, width, shots, seed, noise)
    else:
        result = 0
        for i, (x, y) in enumerate(zip(_bits(a, width), _bits(b, width))):
            r = run_qalu(circuit, layout, (x, y), 1, shots, seed + i, noise)
            result |= int(r.bits[0]) << i   # c1 carries the NAND bit
    return regs.write(instr.dest, result)


def run_program(lines, regs: RegisterFile, shots: int = 1024, seed: int = 1, noise=None):
    """Execute instruction lines in order, yielding (instruction, registers) after each."""
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        instr = decode(line)
        regs = execute(instr, regs, shots, seed, noise)
        yield instr, regs
