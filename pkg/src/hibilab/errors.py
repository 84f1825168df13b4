"""Exception hierarchy. Every error raised by the library derives from HibiError."""


class HibiError(Exception):
    pass


class ParseError(HibiError):
    def __init__(self, message, line=None, token=None):
        where = ""
        if line is not None:
            where = f"line {line}: "
        if token is not None:
            message = f"{message} (token {token!r})"
        super().__init__(where + message)
        self.line = line
        self.token = token


class NotComparable(HibiError):
    pass


class NotAnIdeal(HibiError):
    pass


class NotALattice(HibiError):
    def __init__(self, a, b, what):
        super().__init__(f"elements {a} and {b} have no {what}")
        self.pair = (a, b)


class NotDistributive(HibiError):
    pass


class NotASegment(HibiError):
    pass


class BadRange(HibiError):
    pass


class TooLarge(HibiError):
    pass


class GroundSetMismatch(HibiError):
    pass


class NotEquigenerated(HibiError):
    pass


class SearchLimitExceeded(HibiError):
    """The exhaustive search was cut off, so a negative answer is not certified."""


class TooManyGenerators(HibiError):
    pass


class NotSquarefree(HibiError):
    pass


class NotMeetClosed(HibiError):
    pass


class NotMinimal(HibiError):
    pass


class PreconditionViolated(HibiError):
    pass


class NotCMBipartiteBase(HibiError):
    pass


class SizeMismatch(HibiError):
    pass


class BadRank(HibiError):
    pass


class CrosscheckFailure(HibiError):
    """An independent oracle disagreed with a criterion. Indicates a bug."""
