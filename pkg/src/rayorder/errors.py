"""Exception hierarchy.

Every error raised on purpose by the package derives from ``RayOrderError``.
The command line maps the three families onto exit codes.
"""


class RayOrderError(Exception):
    exit_code = 1


class ParseError(RayOrderError, ValueError):
    exit_code = 2

    def __init__(self, message, text=None, pos=None):
        self.reason = message
        self.text = text
        self.pos = pos
        if text is not None and pos is not None:
            message = f"{message} at position {pos} in {text!r}"
        super().__init__(message)


class PreconditionError(RayOrderError, ValueError):
    exit_code = 3


class NotIrreducible(PreconditionError):
    pass


class RankDeficient(PreconditionError):
    pass


class NotAnOrder(PreconditionError):
    pass


class NotAnIdeal(PreconditionError):
    pass


class NotSuborder(PreconditionError):
    pass


class NotInvertible(PreconditionError):
    pass


class NotIntegral(PreconditionError):
    pass


class NotCoprime(PreconditionError):
    pass


class NotPrime(PreconditionError):
    pass


class InvalidLevel(PreconditionError):
    pass


class InfiniteCokernel(PreconditionError):
    pass


class UnitsUnavailable(PreconditionError):
    pass


class BoundExceeded(RayOrderError):
    exit_code = 4


class ResidueRingTooLarge(BoundExceeded):
    pass


class DiscTooLarge(BoundExceeded):
    pass


class WitnessInvalid(PreconditionError):
    pass
