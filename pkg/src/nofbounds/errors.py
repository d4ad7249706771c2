"""Exception hierarchy shared by every module."""


class NofError(Exception):
    """Base class for all library errors."""


class ValidationError(NofError, ValueError):
    """Malformed input or violated precondition."""


class DimensionError(ValidationError):
    """Shapes do not match, or an axis is out of range."""


class CapacityError(NofError):
    """A computation would exceed a configured size cap."""

    def __init__(self, what, count, cap):
        self.what = what
        self.count = count
        self.cap = cap
        super().__init__(f"{what}: {count} exceeds cap {cap}")


class ConditionViolated(NofError):
    """A side condition of a bound does not hold, so no bound is emitted."""
