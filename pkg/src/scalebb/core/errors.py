"""Exception hierarchy for scalebb.

The family an error belongs to fixes the CLI exit code:

- ``InputError`` -> 1
- ``NumericalFailure`` -> 2
- ``StructuralError`` -> 3
- ``IterationAnomaly`` -> 4
"""


class ScaleBBError(Exception):
    """Base class for all domain errors."""


class InputError(ScaleBBError):
    """The caller supplied data outside an operation's domain."""


class InvalidInterval(InputError, ValueError):
    """An interval with lo > hi or a NaN endpoint."""


class DimensionTooLarge(InputError):
    """The brute-force oracle was asked for more variables than it supports."""


class NegativeAlpha(InputError):
    """An alpha vector with a negative component."""


class NumericalFailure(ScaleBBError):
    """A numerical step could not be completed."""


class RowSaturated(NumericalFailure):
    """A row update was requested on a row that is not unsaturated."""


class SingularSubsystem(NumericalFailure):
    """The I-subsystem matrix is (numerically) singular."""


class NonpositiveSolution(NumericalFailure):
    """The I-subsystem solution has a component that is not strictly positive."""


class StructuralError(ScaleBBError):
    """The input violates a structural precondition."""


class AsymmetricInput(StructuralError):
    """An interval or point matrix that should be symmetric is not."""


class NonpositiveRadius(StructuralError):
    """A radius vector with a zero or negative component."""


class NonpositiveScaling(StructuralError):
    """A scaling vector with a zero or negative component."""


class DegenerateRow(StructuralError):
    """A row whose off-diagonal part vanishes at the current scaling."""


class ReducibleInput(StructuralError):
    """A block-diagonal matrix where an irreducible one is required."""


class IterationAnomaly(ScaleBBError):
    """Local improvement II needed more than n - 1 iterations."""


class ExpressionSyntaxError(SyntaxError):
    """Malformed expression text."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text


class VariableIndexError(IndexError):
    """A variable ``xk`` with k outside 1..n."""
