"""Exception types shared across the toolkit."""


class UgkitError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(UgkitError):
    """Raised when an ultragraph description is malformed.

    Carries the full list of issues so callers can report all of them
    at once instead of fixing one at a time.
    """

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class UniverseMismatch(UgkitError):
    pass


class InfiniteEdgeSet(UgkitError):
    pass


class Unbounded(UgkitError):
    """An operation would require enumerating an infinite edge family."""


class ZeroRow(UgkitError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"matrix row {index!r} is identically zero")


class TooManyRanges(UgkitError):
    pass


class TooLarge(UgkitError):
    pass


class FTooLarge(UgkitError):
    pass


class HasLoop(UgkitError):
    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(
            "ultragraph has a loop: " + " ".join(str(e) for e in self.witness)
        )


class NotASink(UgkitError):
    pass


class NotInfiniteEmitter(UgkitError):
    pass


class NotALoop(UgkitError):
    pass


class NotInLattice(UgkitError):
    pass


class UnknownEdge(UgkitError):
    pass


class MissingGenerator(UgkitError):
    pass


class NoSinksViolated(UgkitError):
    pass


class NonUnitalUnit(UgkitError):
    pass


class TruncationEmpty(UgkitError):
    pass


class ParseError(UgkitError):
    """Positioned syntax error in a document or matrix file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}"
            if column is not None:
                where += f", column {column}"
        super().__init__(message + where)
