"""Exception types shared across the package."""


class ChoiwitError(ValueError):
    """Base class for all errors raised by this package."""


class NotHermitianError(ChoiwitError):
    """A matrix required to be Hermitian is not, within tolerance."""


class OutOfRangeError(ChoiwitError):
    """A family angle lies outside the admissible interval."""


class BoundaryCaseError(ChoiwitError):
    """The parameter point sits on the a = 1 boundary where t is undefined."""


class OffFamilyError(ChoiwitError):
    """The parameter triple does not satisfy the one-parameter family conditions."""


class NonpositiveTError(ChoiwitError):
    """The scalar family parameter t must be a positive finite real."""


class InvalidStateError(ChoiwitError):
    """A candidate density matrix violates Hermiticity, positivity or trace."""
