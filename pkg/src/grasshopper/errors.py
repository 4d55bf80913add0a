"""Exception hierarchy shared by every module."""


class GrasshopperError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GrasshopperError, ValueError):
    """Malformed or out-of-contract input."""


class CapacityError(GrasshopperError):
    """A configured resource cap fired before the computation finished.

    ``cap`` names the limit (e.g. ``"memo_entries"``) and ``limit`` its value,
    so callers can report which knob to raise.
    """

    def __init__(self, message: str, cap: str = "", limit=None):
        super().__init__(message)
        self.cap = cap
        self.limit = limit


class ConsistencyError(GrasshopperError):
    """Two computations that must agree did not. Always an implementation bug."""


class TheoremViolation(GrasshopperError):
    """An instance inside the theorem's mine bound came back blocked."""

    def __init__(self, message: str, instance: dict | None = None):
        super().__init__(message)
        self.instance = instance or {}
