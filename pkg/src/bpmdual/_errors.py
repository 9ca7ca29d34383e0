"""Exception types shared across the package."""


class BpmDualError(Exception):
    """Base class for all package-specific errors."""


class SizeLimitError(BpmDualError):
    """An operation was invoked beyond its configured size cap."""

    def __init__(self, what: str, value: int, cap: int):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what}={value} exceeds the configured cap of {cap}")


class NotTotallyOrderedError(BpmDualError):
    """The graph's left neighbour sets do not form a chain."""


class NotSortedOrderedError(BpmDualError):
    """The graph is not in sorted ordered form (ascending prefix rows)."""


class DegenerateSequenceError(BpmDualError):
    """The representing sequence has some d_{i+1} <= k_i."""


class DimensionMismatchError(BpmDualError):
    """Two objects built for different side sizes n were combined."""


class PreconditionError(BpmDualError):
    """A documented operation precondition does not hold for the input."""


class EmptyGraphError(BpmDualError):
    """The operation excludes the empty graph from its domain."""


class DomainError(BpmDualError):
    """A numeric argument is outside the operation's domain."""


class NumericalFailure(BpmDualError):
    """A numeric certification step failed for a claimed result."""
