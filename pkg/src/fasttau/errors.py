"""Exception hierarchy.

Every error carries the process exit code the command line tool maps it to,
so library callers and the CLI agree on one classification.
"""

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_VALIDATION = 4
EXIT_DEGENERATE = 5
EXIT_NOT_APPLICABLE = 6
EXIT_ORACLE_MISMATCH = 7

EXIT_CODES = {
    EXIT_OK: "success",
    EXIT_USAGE: "usage error (bad flags, bad selectors, limits exceeded)",
    EXIT_INPUT: "input error (file not found, column not found, unparseable cell)",
    EXIT_VALIDATION: "validation error (length mismatch, fewer than 2 pairs, non-finite value)",
    EXIT_DEGENERATE: "degenerate input (a column is constant, tau undefined)",
    EXIT_NOT_APPLICABLE: "exact method not applicable (ties present)",
    EXIT_ORACLE_MISMATCH: "oracle self-check failed",
}


class TauError(Exception):
    exit_code = 1


class UsageError(TauError, ValueError):
    exit_code = EXIT_USAGE


class InputError(TauError):
    exit_code = EXIT_INPUT


class InputFileNotFound(InputError, FileNotFoundError):
    pass


class ColumnNotFound(InputError, KeyError):
    def __init__(self, selector, available):
        self.selector = selector
        self.available = list(available)
        super().__init__(
            f"column {selector!r} not found; available: {', '.join(map(str, self.available))}"
        )

    def __str__(self):
        return self.args[0]


class ParseError(InputError, ValueError):
    def __init__(self, row, column, value):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"cannot parse {value!r} as a number at row {row}, column {column!r}")


class ValidationError(TauError, ValueError):
    exit_code = EXIT_VALIDATION


class LengthMismatch(ValidationError):
    def __init__(self, len_x, len_y):
        self.len_x = len_x
        self.len_y = len_y
        super().__init__(f"x and y differ in length ({len_x} != {len_y})")


class TooShort(ValidationError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"need at least 2 pairs, got {n}")


class NonFinite(ValidationError):
    def __init__(self, vector, index, value):
        self.vector = vector
        self.index = index
        self.value = value
        super().__init__(f"non-finite value {value!r} in {vector} at index {index}")


class DegenerateInput(TauError, ValueError):
    """Raised when tau (or its null variance) is undefined.

    ``vector`` names the constant input ("x", "y" or "both") when known.
    """

    exit_code = EXIT_DEGENERATE

    def __init__(self, message, vector=None):
        self.vector = vector
        super().__init__(message)


class ExactNotApplicable(TauError, ValueError):
    exit_code = EXIT_NOT_APPLICABLE


class NTooLarge(UsageError):
    pass


class CutoffExceeded(UsageError):
    pass


class InsufficientSizes(UsageError):
    pass


class OracleMismatch(TauError, AssertionError):
    exit_code = EXIT_ORACLE_MISMATCH
