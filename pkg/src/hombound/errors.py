"""Exception hierarchy shared across the package."""

from __future__ import annotations


class HomBoundError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(HomBoundError, ValueError):
    """An argument is outside the domain an operation accepts."""


class UncolorableGraphError(HomBoundError):
    """Chromatic number was requested for a graph with loops."""


class OrderAxiomError(HomBoundError):
    """A relation is not reflexive, antisymmetric, and transitive."""


class ActionAxiomError(HomBoundError):
    """A table violates the group or group-action axioms."""


class EquivarianceError(HomBoundError):
    """A group action does not preserve the partial order."""


class FreenessError(HomBoundError):
    """An operation that requires a free action was given a non-free one."""


class WrongShapeError(HomBoundError):
    """A graph or poset does not have the shape the operation requires."""


class DegenerateGroupError(HomBoundError):
    """The trivial group was supplied where a non-trivial one is required."""


class InstanceTooLargeError(HomBoundError):
    """A resource cap fired; no partial result is returned."""

    def __init__(self, cap_name: str, limit: int, message: str | None = None):
        self.cap_name = cap_name
        self.limit = limit
        super().__init__(
            message or f"resource cap '{cap_name}' exceeded (limit {limit})"
        )


class TruncationError(HomBoundError):
    """Homology was requested beyond the reliable range of a truncated complex."""


class TheoremViolationError(HomBoundError):
    """A mathematically guaranteed property failed: an implementation bug."""


class InternalError(HomBoundError):
    """An internal consistency check failed (a construction bug, not user error)."""


class InputFormatError(HomBoundError):
    """An input file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")
