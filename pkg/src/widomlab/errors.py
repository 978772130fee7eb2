"""Exception hierarchy shared by all widomlab modules."""


class WidomlabError(Exception):
    """Base class for widomlab failures."""


class ConfigError(WidomlabError):
    """Invalid or unparsable job configuration."""


class ConvergenceError(WidomlabError):
    """An iterative solve (Remez exchange, gap-zero solve) did not converge.

    Carries the last residual so callers can report how far off it was.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class QuadratureError(WidomlabError):
    """Quadrature budget insufficient (mass check, negative norm, ...)."""


class AdmissibilityError(WidomlabError):
    """A polynomial preimage spec fails the realness/critical-value checks."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
