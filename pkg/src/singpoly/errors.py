"""Exception types raised by singpoly."""


class SingpolyError(Exception):
    pass


class DomainError(SingpolyError, ValueError):
    """A parameter lies outside the domain where a construction is defined."""


class PoleError(DomainError):
    """A denominator vanishes at the requested parameter value."""


class DegenerateParameterError(DomainError):
    pass


class InvalidPartition(DomainError):
    pass


class EvenPowerError(DomainError):
    pass


class OrderError(DomainError):
    pass


class RangeError(DomainError):
    pass


class DivisibilityError(DomainError):
    pass


class GcdError(DomainError):
    pass


class DimensionMismatch(SingpolyError, ValueError):
    pass


class ParseError(SingpolyError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
