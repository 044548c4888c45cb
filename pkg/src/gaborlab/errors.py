"""Exception types raised by gaborlab."""


class GaborlabError(Exception):
    """Base class for all library errors."""


class DomainError(GaborlabError, ValueError):
    """An argument lies outside the domain of an operation."""


class UnsupportedDensityError(DomainError):
    """Sharp bounds were requested for a density that is not an even integer."""


class NotAFrameError(DomainError):
    """The finite Gabor system does not span (singular frame operator)."""


class NumericalConsistencyError(GaborlabError, ArithmeticError):
    """A computed quantity violated an internal consistency check."""
