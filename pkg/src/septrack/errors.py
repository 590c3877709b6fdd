"""Exception types shared across the package."""

from __future__ import annotations


class SeptrackError(Exception):
    """Base class for all package-specific errors."""


class GraphError(SeptrackError):
    """Malformed graph input (self-loop, parallel edge, bad endpoint)."""


class CoverageError(SeptrackError):
    """A labelling does not cover exactly the expected vertex set."""


class DisconnectedGraphError(SeptrackError):
    """Raised when an operation requires a connected graph.

    ``vertex`` names one vertex that the traversal never reached.
    """

    def __init__(self, vertex: int, message: str | None = None):
        self.vertex = vertex
        super().__init__(message or f"graph is disconnected: vertex {vertex} unreached")


class EmbeddingError(SeptrackError):
    """A rotation system fails the planarity (Euler) check or is malformed."""


class InvariantViolation(SeptrackError):
    """An internal structural guarantee failed; always a bug, never input error."""


class DrawingError(SeptrackError):
    """Greedy z-assignment could not place a vertex within the height budget."""

    def __init__(self, message: str, obstruction: tuple | None = None):
        self.obstruction = obstruction
        super().__init__(message)


class FormatError(SeptrackError):
    """A document failed structural validation on load."""
