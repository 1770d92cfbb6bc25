"""Exception types shared across the package.

The CLI maps these onto exit codes: validation problems exit with 1,
capacity problems with 3.
"""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class DimensionError(ValidationError):
    pass


class DomainError(ValidationError):
    """Argument outside the mathematical domain of a function."""


class TailValidityError(ValidationError):
    """Deviation lies outside the range where a tail inequality holds."""


class CSVFormatError(ValidationError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class CapacityError(RuntimeError):
    """Requested enumeration is too large to run exhaustively."""
