"""Exception taxonomy shared across the package.

Exit-code mapping used by the CLI lives in cli.py; library code raises these
and never calls sys.exit.
"""


class BenfordXYError(Exception):
    """Base class for all package-specific errors."""


class DomainError(BenfordXYError):
    """Numeric input outside the mathematical domain of an operation."""


class SingularFitError(BenfordXYError):
    """Least-squares problem is rank deficient or under-determined."""


class DegenerateWindowError(BenfordXYError):
    """All values in a window are identical; unit rescaling is undefined."""


class EmptyHistogramError(BenfordXYError):
    """Digit histogram holds no counted values."""


class ConfigurationError(BenfordXYError):
    """Invalid parameter combination detected before any computation."""


class NoTransitionError(BenfordXYError):
    """Fitted curve has no interior extremum of the requested kind."""


class MixedSideError(BenfordXYError):
    """Pseudo-critical points do not all approach the critical point from one side."""

    def __init__(self, offenders):
        self.offenders = list(offenders)
        super().__init__(
            "lambda_c_n >= lambda_c for n_sites: "
            + ", ".join(str(n) for n in self.offenders)
        )


class InsufficientRidgeError(BenfordXYError):
    """Fewer than three usable ridge points on a crossover branch."""
