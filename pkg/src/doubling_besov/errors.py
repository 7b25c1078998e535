"""Exception hierarchy shared by every module."""


class DoublingBesovError(Exception):
    """Base class for library errors."""


class ValidationError(DoublingBesovError, ValueError):
    """Malformed input: bad weight/function specification or manifest."""


class QuadratureError(DoublingBesovError, ArithmeticError):
    """A numerical procedure could not produce a trustworthy value."""


class ResolutionError(QuadratureError):
    """Evaluation point too close to the boundary for the kernel to be resolved."""


class DivisionSingularityError(QuadratureError):
    """Quotient evaluated where the denominator (nearly) vanishes."""


class InconsistencyError(QuadratureError):
    """A quantity that must be nonnegative came out negative beyond tolerance.

    Signals under-resolution of the angular or boundary grids.
    """
