"""Exception hierarchy shared by every catkit module."""


class CatkitError(Exception):
    """Base class for all catkit errors."""


class MalformedInput(CatkitError):
    """Duplicate or dangling ids, or a document that does not match its schema."""


class NotComposable(CatkitError):
    pass


class UnknownNode(CatkitError):
    pass


class SizeLimitExceeded(CatkitError):
    pass


class NoExtension(CatkitError):
    """A pointwise limit needed by a Kan extension does not exist."""


class NotParallel(CatkitError):
    pass


class NotGroupoidal(CatkitError):
    pass


class InvalidInput(CatkitError):
    """Raised when structured input fails validation; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAnAdjunction(InvalidInput):
    pass


class NotAMonad(InvalidInput):
    pass


class BoundaryMismatch(CatkitError):
    pass
