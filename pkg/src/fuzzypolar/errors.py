class FuzzyPolarError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(FuzzyPolarError, ValueError):
    """Malformed or inconsistent input (CLI exit code 2)."""


class InvalidGradeError(InvalidInputError):
    pass


class InvalidChainError(InvalidInputError):
    """Level regions of a step fuzzy set are not nested."""


class InvalidBasisError(InvalidInputError):
    pass


class DimensionMismatchError(InvalidInputError):
    pass


class PreconditionError(InvalidInputError):
    pass


class UnsupportedError(FuzzyPolarError):
    """Operation outside the supported class (CLI exit code 3)."""


class UnsupportedDimensionError(UnsupportedError):
    pass


class UnboundedRegionError(UnsupportedError):
    """An operation that needs a bounded region received an unbounded one."""


class NonConvexRegionError(UnsupportedError):
    pass


class GridTooLargeError(UnsupportedError):
    pass
