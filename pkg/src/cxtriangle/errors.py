"""Exceptions shared across the package."""


class CxTriangleError(Exception):
    """Base class for all package errors."""


class ConductorLimitError(CxTriangleError):
    """An operation would exceed the configured conductor bound."""


class NonRealError(CxTriangleError):
    """Sign queried for a value that is not real."""


class WordSyntaxError(CxTriangleError):
    """Malformed word string; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CatalogError(CxTriangleError):
    """Unknown group parameters or inconsistent catalog data."""


class ClassificationError(CxTriangleError):
    """Matrix fails the preconditions of an isometry classification."""


class VerificationError(CxTriangleError):
    """An asserted identity from the data bank fails to hold."""
