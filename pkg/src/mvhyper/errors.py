"""Exception types raised across the package."""


class DomainError(ValueError):
    """A parameter violates a required bound."""


class PoleError(ArithmeticError):
    """A series hit a zero denominator, or a gamma function hit a pole."""


class DivergenceError(ArithmeticError):
    """A series left its convergence region or its terms started to grow."""


class ResourceError(RuntimeError):
    """A requested degree or size is above the configured ceiling."""


class DimensionError(ValueError):
    """Matrix shapes do not conform."""


class UnsupportedCaseError(NotImplementedError):
    """The parameter combination has no evaluable representation here."""
