"""Exception hierarchy shared by every module of the package."""


class RingLinksError(Exception):
    """Base class for all errors raised by ringlinks."""


class MalformedSpec(RingLinksError):
    pass


class SizeLimitExceeded(RingLinksError):
    pass


class IndexOutOfRange(RingLinksError):
    pass


class RingMismatch(RingLinksError):
    pass


class LatticeLimitExceeded(RingLinksError):
    pass


class NotProper(RingLinksError):
    pass


class NotSemiprime(RingLinksError):
    pass


class NoLink(RingLinksError):
    pass


class HypothesisNotMet(RingLinksError):
    pass


class InternalInvariantViolation(RingLinksError):
    """A property that theory guarantees failed on a concrete instance.

    Raised instead of silently returning, so that a falsification is never
    swallowed by a caller.
    """


class NotAutomorphism(RingLinksError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
