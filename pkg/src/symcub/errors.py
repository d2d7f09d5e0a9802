"""Exception types shared across the package."""


class UnsupportedDegreeError(ValueError):
    """Requested a polynomial degree for which no explicit formula exists."""


class IllConditionedInputError(ValueError):
    """Input would require evaluating a removable singularity numerically."""


class NumericFailureError(RuntimeError):
    """An iterative numerical procedure failed to converge."""


class OracleImpreciseError(RuntimeError):
    """A reference integration cannot meet its accuracy budget."""
