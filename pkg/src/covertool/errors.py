"""Exception hierarchy.

Each exception carries an ``exit_code`` used by the command line front end:
2 for a failed property, 3 for a failed precondition or bad input, 4 when a
resource ceiling was hit.
"""


class CoverToolError(Exception):
    exit_code = 1


class PreconditionFailed(CoverToolError):
    exit_code = 3


class ParseError(CoverToolError):
    exit_code = 3

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class InvalidModulus(ParseError, ValueError):
    pass


class ResourceCeiling(CoverToolError):
    exit_code = 4


class SieveTooLarge(ResourceCeiling):
    pass


class TooManySubsets(ResourceCeiling):
    pass


class EnumerationTooLarge(ResourceCeiling):
    pass


class WorkCeilingExceeded(ResourceCeiling):
    pass


class TheoremViolated(CoverToolError):
    """A proven statement failed on concrete input. Always a bug somewhere."""

    exit_code = 2


class CharacterizationMismatch(TheoremViolated):
    pass


class NormNotRationalInteger(CoverToolError):
    exit_code = 2
