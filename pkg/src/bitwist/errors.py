"""Exception types shared across the package."""


class BitwistError(Exception):
    """Base class for domain errors raised by this package."""


class NotExpandable(BitwistError, ValueError):
    """No all-even continued fraction exists for the given fraction."""


class NotAKnot(BitwistError, ValueError):
    """The numerator closure of the requested tangle is a link or the unknot."""


class MalformedInput(BitwistError, ValueError):
    """A presentation does not have the shape expected from its multipliers."""


class MalformedState(BitwistError, RuntimeError):
    """A surgery move was attempted on a curve that is no longer present."""


class DivisionUndefined(BitwistError, ZeroDivisionError):
    """The closure fraction has zero denominator (the axis is unknotted)."""
