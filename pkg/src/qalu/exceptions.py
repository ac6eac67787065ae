"""Exception types raised across the package.

Everything derives from ``ValueError`` so callers that only care about
"bad input" can catch one thing.
"""


class CircuitError(ValueError):
    """Invalid gate operand, arity, or circuit argument."""


class MeasurementOrderError(CircuitError):
    """A unitary gate was appended after a terminal measurement."""


class NotInvertibleError(CircuitError):
    """The circuit contains measurements and has no inverse."""


class ResourceLimitError(ValueError):
    """A dense representation was requested for too many qubits."""


class UnsupportedGateError(ValueError):
    """A gate kind has no lowering rule."""


class CircuitParseError(ValueError):
    """Malformed line in the textual circuit format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CalibrationParseError(ValueError):
    """Malformed calibration table."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class NandUnsupportedError(ValueError):
    """NAND requested for an input width where the top sum bit is not AND."""


class UnsupportedInstructionError(ValueError):
    """Opcode the soft-core does not implement."""


class InstructionParseError(ValueError):
    """Instruction text does not match ``<op> $rd, $rs, $rt``."""
