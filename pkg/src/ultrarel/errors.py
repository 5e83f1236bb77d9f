"""Exception types raised by the kernel and the command-line layer."""


class UltrarelError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(UltrarelError, ValueError):
    """Two operands live on carriers of different size."""


class SizeError(UltrarelError, ValueError):
    """A carrier or derived space exceeds the configured cap."""


class ValidationError(UltrarelError, ValueError):
    """A value does not satisfy the invariants of its type."""


class PreconditionError(UltrarelError, ValueError):
    """An operation was called outside its domain."""


class InvariantViolation(UltrarelError):
    """Two evaluators that must agree returned different answers."""


class FormatError(UltrarelError, ValueError):
    """A JSON document does not match the expected file format.

    ``where`` names the offending field (``pairs[2]``) or the
    ``line:column`` position reported by the JSON decoder.
    """

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
