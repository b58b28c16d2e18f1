"""Exception hierarchy shared by every module."""


class LeviflatError(Exception):
    """Base class for all errors raised by this package."""


class VariableCountError(LeviflatError, ValueError):
    """Operands live in polynomial rings with different variable counts."""


class NotBihomogeneousError(LeviflatError, ValueError):
    pass


class NotRealValuedError(LeviflatError, ValueError):
    """Input is neither real-valued nor (where allowed) imaginary-valued."""


class NotHermitianError(LeviflatError, ValueError):
    pass


class ParseError(LeviflatError, ValueError):
    """Syntax error in polynomial text, with 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class SchemaError(LeviflatError, ValueError):
    """A JSON document does not match the polynomial document schema."""
