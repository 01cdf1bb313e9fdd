class InfosymError(Exception):
    """Base class for errors raised by this package."""


class LimitError(InfosymError):
    """A configured size bound (variable count, table size) was exceeded."""


class VariableError(InfosymError, ValueError):
    """Variable index outside the manager's universe."""


class ManagerMismatchError(InfosymError, ValueError):
    """Operands come from different managers or variable universes."""


class InvariantError(InfosymError):
    """Internal structural invariant violated."""


class ParseError(InfosymError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SequentialUnsupportedError(ParseError):
    """Input describes sequential logic (latches etc.)."""


class CycleError(ParseError):
    """Combinational loop among netlist signals."""
