"""Exception hierarchy shared by every module."""


class BipforgeError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BipforgeError, ValueError):
    """An argument lies outside the domain of an operation."""


class ValidationError(BipforgeError, ValueError):
    """A structured input (path system, model, wall record) violates its invariants."""


class GraphParseError(BipforgeError, ValueError):
    """A graph file could not be parsed; the message names the offending line."""


class CapExceeded(BipforgeError, RuntimeError):
    """An exhaustive search was refused because the instance exceeds its cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: instance size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class ConfigError(BipforgeError, ValueError):
    """An experiment specification is malformed."""
