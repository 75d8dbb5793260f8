"""Exception types shared across the library."""


class QTangentError(Exception):
    """Base class for all library errors."""


class MixedTowerError(QTangentError):
    """Scalars from incompatible field towers were mixed."""


class PoleAtOneError(QTangentError):
    """A rational function in s has a pole at s = 1."""


class DegeneratePairingError(QTangentError):
    """A bilinear pairing matrix is singular where nondegeneracy is required."""


class AmbientMismatchError(QTangentError):
    """Subspace operation on spaces with different ambients."""


class GroupSpecError(QTangentError):
    """Malformed group specification."""


class SizeCapError(QTangentError):
    """Group enumeration exceeded the configured element cap."""


class SideMismatchError(QTangentError):
    """Hopf elements from the wrong side (function vs group algebra)."""


class NotInKernelError(QTangentError):
    """Element expected in ker(counit) has nonzero counit."""


class StabilityError(QTangentError):
    """A subspace is not stable under the quantum double action."""


class EmptyTangentError(QTangentError):
    """A construction produced the zero tangent space where nonzero is required."""


class CentralityError(QTangentError):
    """An element required to be central is not."""


class ConsistencyError(QTangentError):
    """An internal cross-check failed (convention mismatch or logic error)."""
