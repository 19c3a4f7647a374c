"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition."""


class ZoneEdgeError(ValidationError):
    """Raised when a carrier lands exactly on a Nyquist-zone boundary.

    A band edge sitting on k*fs/2 has no usable alias placement, so it is
    reported distinctly instead of being assigned to either adjacent zone.
    """


class NoFundamentalError(ValidationError):
    """Raised when spectral metrics are requested for a signal with no tone."""
