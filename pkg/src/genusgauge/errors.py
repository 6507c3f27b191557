"""Exception hierarchy shared by every genusgauge module."""


class GenusGaugeError(ValueError):
    """Base class for all errors raised by this package."""


class ParameterError(GenusGaugeError):
    """Inputs violate an operation's preconditions."""


class InvalidModulusError(ParameterError):
    pass


class InvalidDivisorError(ParameterError):
    pass


class DomainError(ParameterError):
    pass


class PoleError(GenusGaugeError):
    """Evaluation of a Laurent polynomial with negative exponents at zero."""


class CapError(GenusGaugeError):
    """Requested size exceeds the configured evaluation cap."""


class NumericalConsistencyError(GenusGaugeError):
    """A floating point evaluation failed its own consistency check."""


class OrientationError(ParameterError):
    """Signature is negative; reverse the orientation of the ambient manifold."""


class OutOfHypothesisError(ParameterError):
    pass
