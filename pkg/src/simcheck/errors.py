"""Exception hierarchy shared by all simcheck modules."""


class SimcheckError(Exception):
    """Base class for every error raised by this package."""


class PMFError(SimcheckError, ValueError):
    pass


class NegativeMass(PMFError):
    pass


class NotNormalized(PMFError):
    pass


class EmptyAlphabet(PMFError):
    pass


class DimensionMismatch(SimcheckError, ValueError):
    pass


class ConvergenceFailure(SimcheckError, ArithmeticError):
    pass


class CycleLimitExceeded(SimcheckError, RuntimeError):
    pass


class MarginalMismatch(SimcheckError, ValueError):
    """Row sums of P_YZ and P_YX disagree, so they cannot share a P_Y."""


class NotAGInverse(SimcheckError, ValueError):
    pass


class AlphabetTooLarge(SimcheckError, ValueError):
    pass


class NotSimulatable(SimcheckError):
    """Raised when no channel exists; carries the LP's Farkas certificate."""

    def __init__(self, message, certificate=None, outcome=None):
        super().__init__(message)
        self.certificate = certificate
        self.outcome = outcome
