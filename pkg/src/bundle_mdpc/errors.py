"""Exception hierarchy shared by all modules."""


class BundleMdpcError(Exception):
    """Base class for all library errors."""


class DomainError(BundleMdpcError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceError(BundleMdpcError):
    """A computation would exceed its configured size guard."""


class ShapeError(BundleMdpcError, ValueError):
    """Matrix or vector dimensions do not agree."""


class StructureError(BundleMdpcError):
    """An incidence structure violates one of its axioms."""


class SearchFailure(BundleMdpcError):
    """A bounded search ended before finding the requested objects."""

    def __init__(self, message: str, found: int = 0):
        super().__init__(message)
        self.found = found
