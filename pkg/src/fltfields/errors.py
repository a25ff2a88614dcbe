"""Exception taxonomy shared by the whole package.

The CLI maps these onto exit codes: bad input -> 1, resource caps -> 2,
a failed mathematical verification -> 3.
"""


class FltError(Exception):
    """Base class for all package errors."""


class DomainError(FltError):
    """Input outside an operation's mathematical domain (zero polynomial,
    composite modulus, reducible defining polynomial, ...)."""


class ParseError(DomainError):
    """Malformed polynomial or CLI argument syntax."""


class CapError(FltError):
    """A configured computation cap (degree, enumeration effort) was hit.

    Carries enough context to tell the caller which resource ran out.
    """

    def __init__(self, message, *, limit=None, requested=None, completed=None):
        super().__init__(message)
        self.limit = limit
        self.requested = requested
        self.completed = completed or []


class InconclusiveError(FltError):
    """Search effort exhausted without a proof either way.

    Raised instead of returning a possibly wrong answer.
    """


class VerificationFailure(FltError):
    """A desk-checkable fact that must always hold failed to verify."""
