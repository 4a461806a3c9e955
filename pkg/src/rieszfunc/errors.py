"""Exception hierarchy shared by all modules."""


class RieszError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(RieszError, ValueError):
    pass


class DomainError(RieszError, ValueError):
    """Argument outside the region where an algorithm is valid."""


class CapacityError(RieszError):
    """A Mobius table is too small for the requested accuracy."""

    def __init__(self, message: str, required_limit: int):
        super().__init__(message)
        self.required_limit = required_limit


class NotFoundError(RieszError):
    pass


class DegenerateZeroError(RieszError):
    pass
