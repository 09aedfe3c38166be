"""Exception hierarchy shared across the library."""


class DtlError(Exception):
    """Base class for all domain errors raised by this package."""


class DiscriminantMismatch(DtlError):
    """Two exact scalars from different quadratic fields were combined."""


class PreconditionError(DtlError):
    """An operation was called with inputs violating its stated precondition."""


class CostGuardExceeded(DtlError):
    """A brute-force oracle or desk-scale operation was asked to exceed its limit."""


class FormatError(DtlError):
    """A point-set or distance-matrix file could not be parsed."""
