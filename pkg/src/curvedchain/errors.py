"""Exception types shared across the package."""


class CurvedChainError(Exception):
    """Base class for all package-specific errors."""


class InvalidMetricError(CurvedChainError):
    """Metric parameters produce a non-positive hopping amplitude.

    Attributes
    ----------
    site : int or None
        1-based link index of the first offending hopping, when known.
    """

    def __init__(self, message, site=None):
        super().__init__(message)
        self.site = site


class ConvergenceError(CurvedChainError):
    """Eigensolver failed to converge within the sweep cap.

    Attributes
    ----------
    index : int
        0-based index of the eigenvalue that did not converge.
    """

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class FillingError(CurvedChainError):
    """Half filling requested on a chain with an odd number of sites."""


class FitError(CurvedChainError):
    """Least-squares fit could not be carried out (bad input or rank loss)."""


class ConfigError(CurvedChainError):
    """Malformed or invalid experiment configuration.

    Attributes
    ----------
    line : int or None
        1-based line number in the config document, when applicable.
    """

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
