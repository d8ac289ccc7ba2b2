"""
Domain errors for the W(m,n) engine.

Every error is a ValueError so the API layer can map it to HTTP 400 and the
CLI can map it to exit code 2.
"""


class ContextMismatchError(ValueError):
    """Operands live in different algebras or coefficient contexts."""


class IndexRangeError(ValueError):
    """An even or odd variable index is out of range."""


class NonInvertibleError(ValueError):
    """A twisting matrix is not in GL(Z)."""


class InvariantSubspaceError(ValueError):
    """A subspace is not stable under the representation."""


class DegreeBoundError(ValueError):
    """A sampled family is not polynomial of the supplied degree."""


class ZeroWeightError(ValueError):
    """A weight-space division hit lambda_i + s_i = 0."""

    def __init__(self, index: int, shift: tuple):
        self.index = index
        self.shift = shift
        super().__init__(f"Zero weight at index {index} for shift {shift}")


class SearchExhaustedError(ValueError):
    """A bounded search found no admissible value."""


class ExprSyntaxError(ValueError):
    """Malformed expression text; column is 1-based."""

    def __init__(self, message: str, column: int):
        self.column = column
        super().__init__(f"{message} at column {column}")
