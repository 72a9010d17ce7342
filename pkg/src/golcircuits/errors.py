"""Exception types shared across the package."""


class GolError(Exception):
    """Base class for all errors raised by this package."""


class RleError(GolError):
    """Malformed RLE input."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + loc)
        self.line = line
        self.column = column


class VarCapError(GolError):
    """Too many distinct variables in a symbolic neighborhood."""

    def __init__(self, count, cap, cell=None):
        where = f" in cell {cell}" if cell is not None else ""
        super().__init__(f"too many variables{where}: {count} > cap {cap}")
        self.count = count
        self.cap = cap
        self.cell = cell


class BoundaryEscape(GolError):
    """State influence left the modifier area."""

    def __init__(self, witness, index=None):
        at = f" at step {index}" if index is not None else ""
        super().__init__(f"influence escapes modifier area{at}, witness cell {witness}")
        self.witness = witness
        self.index = index


class AssertionFailure(GolError):
    """Modifier assertion did not match the stepped state."""

    def __init__(self, mismatch, index=None, detail=""):
        at = f" at step {index}" if index is not None else ""
        extra = f" ({detail})" if detail else ""
        super().__init__(f"assertion mismatch{at}{extra}: {sorted(mismatch)[:8]}")
        self.mismatch = mismatch
        self.index = index


class SpecError(GolError):
    """Ill-formed circuit specification or illegal spec operation."""


class PortOverlapError(SpecError):
    pass


class AreaOverlapError(SpecError):
    pass


class UnmatchedPortError(SpecError):
    def __init__(self, pos, direction, side):
        super().__init__(f"unmatched port ({pos}, {direction}) on {side}")
        self.pos = pos
        self.direction = direction
        self.side = side


class SignalMismatchError(SpecError):
    def __init__(self, pos, direction, sig_a, sig_b):
        super().__init__(
            f"ports at ({pos}, {direction}) align but signals differ: {sig_a} vs {sig_b}"
        )
        self.pos = pos
        self.direction = direction


class GateCheckError(GolError):
    """verify_gate failed; carries the reason."""


class FloodfillError(GolError):
    """Violated side condition in a floodfill operation."""

    def __init__(self, condition, detail):
        super().__init__(f"{condition}: {detail}")
        self.condition = condition


class DiagramError(GolError):
    """Malformed circuit diagram text."""

    def __init__(self, message, row=None, col=None):
        loc = ""
        if row is not None:
            loc = f" at row {row}" + (f", token {col}" if col is not None else "")
        super().__init__(message + loc)
        self.row = row
        self.col = col


class CompileError(GolError):
    """Layout assembly or mega-cell compilation failure."""
