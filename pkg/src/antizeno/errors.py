"""Exception types raised by the library."""


class AntiZenoError(Exception):
    """Base class for all library errors."""


class DomainError(AntiZenoError, ValueError):
    """An argument lies outside the region where a formula is defined."""


class EdgeSingularityError(DomainError):
    """Point evaluation requested exactly at a band edge, where the density
    of states diverges."""


class NumericError(AntiZenoError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance.

    Attributes
    ----------
    estimate : float or None
        Best value obtained before giving up, if any.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class IntegratorInstabilityError(NumericError):
    """Norm drift of the amplitude integrator exceeded its bound."""


class DegeneracyError(AntiZenoError, ValueError):
    """A quantity is undefined because its inputs are degenerate."""
