"""Exception types shared across the package."""


class PrepspaceError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(PrepspaceError, ValueError):
    """Inputs disagree on the number of measurement outcomes."""


class NotNormalized(PrepspaceError, ValueError):
    """A probability or amplitude vector does not sum to one within tolerance."""


class NegativeProbability(PrepspaceError, ValueError):
    """A probability entry is negative."""


class NotUnitary(PrepspaceError, ValueError):
    """A matrix expected to be unitary is not, within tolerance."""


class NotHermitian(PrepspaceError, ValueError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class InvalidFrame(PrepspaceError, ValueError):
    """Frame matrices violate the orthogonality constraints."""


class BoundaryState(PrepspaceError, ValueError):
    """An operation singular at the probability-simplex boundary was asked to work there."""


class StepRejected(PrepspaceError, RuntimeError):
    """The implicit solver failed to converge even after halving the step once."""


class BoundaryCrossing(PrepspaceError, RuntimeError):
    """A trajectory left the region where the polar chart is usable."""
