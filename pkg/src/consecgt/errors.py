"""Exception hierarchy shared by every module."""


class GroupTestingError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GroupTestingError, ValueError):
    """An argument lies outside the domain of an operation."""


class DecodeError(GroupTestingError):
    """An outcome vector is inconsistent with the consecutive-positives model."""


class RefusalError(GroupTestingError):
    """A brute-force request is too large to enumerate."""
