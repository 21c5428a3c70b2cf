"""Exception hierarchy shared by every geninv module."""


class GenInvError(Exception):
    """Base class for all library errors."""


class InputError(GenInvError, ValueError):
    """Malformed user input (bad file, bad index, wrong shape)."""


class OutOfRangeEntry(InputError):
    pass


class AssociativityViolation(InputError):
    def __init__(self, triple):
        i, j, k = triple
        self.triple = (i, j, k)
        super().__init__(f"table is not associative: (x{i}*x{j})*x{k} != x{i}*(x{j}*x{k})")


class ClosureTooLarge(InputError):
    pass


class NotIdempotent(InputError):
    pass


class PreconditionFailed(InputError):
    pass


class CapExceeded(GenInvError):
    pass


class InvariantViolation(GenInvError, AssertionError):
    """A proven identity failed; always indicates a bug, carries a payload."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}


class EquivalenceMismatch(InvariantViolation):
    pass


class BijectionFailure(InvariantViolation):
    pass


class NotInvertibleAlong(GenInvError):
    """``a`` has no inverse along ``d``; ``report`` holds the evidence."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotInSigma1(GenInvError):
    pass
