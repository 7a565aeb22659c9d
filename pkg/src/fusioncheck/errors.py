"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: StructureError -> 2 (bad input),
NumericError -> 3 (non-convergence), PreconditionError -> 1 (a named
check failed before it could run).
"""


class StructureError(ValueError):
    """Malformed input data: wrong array shapes, bad permutations, unparsable files."""


class PreconditionError(ValueError):
    """An operation was called on data that violates its stated precondition."""


class NumericError(RuntimeError):
    """A numerical routine failed to certify its result within tolerance."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class SizeError(RuntimeError):
    """A closure or enumeration exceeded its configured cap."""
