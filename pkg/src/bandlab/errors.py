"""Exception taxonomy shared across the package.

Domain errors (bad arguments, shape mismatches, malformed configs) are plain
``ValueError``s.  Failures of a numerical procedure get their own hierarchy so
callers (in particular the CLI) can distinguish "your input was wrong" from
"the computation broke down".
"""


class NumericalError(Exception):
    """A numerical procedure failed (divergence, singularity, no convergence)."""


class SingularOperatorError(NumericalError):
    """Operator is rank deficient at the configured threshold.

    Carries the offending singular values so callers can report how close the
    operator was to invertible.
    """

    def __init__(self, message, sigma_min, sigma_max):
        super().__init__(message)
        self.sigma_min = float(sigma_min)
        self.sigma_max = float(sigma_max)


class ConvergenceError(NumericalError):
    """An iterative solver hit its iteration cap before reaching tolerance."""


class DivergenceError(NumericalError):
    """Training loss blew up or became non-finite."""

    def __init__(self, message, epoch):
        super().__init__(message)
        self.epoch = int(epoch)


class ExperimentError(NumericalError):
    """An experiment could not produce usable rows (e.g. nothing interpolated)."""


class ResourceLimitError(ValueError):
    """A configured evaluation budget would be exceeded."""


class InsufficientDataError(ValueError):
    """Not enough usable data points for a fit."""
