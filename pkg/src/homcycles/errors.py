"""Exception types shared across the package."""


class HomcyclesError(Exception):
    """Base class for all package errors."""


class ComplexError(HomcyclesError, ValueError):
    """Invalid simplicial-complex input (bad tuple, bad weight, unknown simplex)."""


class SurfaceError(HomcyclesError, ValueError):
    """The complex is not a combinatorial 2-manifold of the required kind.

    ``offender`` names the vertex or edge violating a link condition, when known.
    """

    def __init__(self, message, offender=None):
        super().__init__(message)
        self.offender = offender


class OrientationError(SurfaceError):
    """Orientation propagation failed; ``pair`` holds the conflicting triangles."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ChainError(HomcyclesError, ValueError):
    """Chain operation misuse: dimension or complex mismatch, non-cycle input."""


class GuardLimitError(HomcyclesError, RuntimeError):
    """An instance-size guard refused a brute-force or capped computation."""


class ParseError(HomcyclesError, ValueError):
    """A file could not be parsed; carries path and 1-based line number."""

    def __init__(self, message, path=None, line=None):
        loc = ""
        if path is not None:
            loc = f"{path}:" if line is None else f"{path}:{line}:"
        super().__init__(f"{loc} {message}" if loc else message)
        self.path = path
        self.line = line


class VerificationError(HomcyclesError, ValueError):
    """A link-diagram instance failed verification against its system."""
