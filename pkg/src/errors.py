"""
Error Types for Bar Visibility

Exception hierarchy shared by every module:
- Input errors (bad graphs, layouts, embeddings, search targets)
- Pipeline precondition failures
- Internal invariant failures (postconditions that did not hold)
- Degenerate drawings that need re-perturbation

Independent module - imported by everything else.
"""


class VisibilityError(Exception):
    """Base class for all library errors"""


class GraphError(VisibilityError, ValueError):
    """Graph is not simple or references undeclared vertices"""


class LayoutError(VisibilityError, ValueError):
    """Bar layout violates its invariants"""


class EmbeddingError(VisibilityError, ValueError):
    """Rotation system or 1-planar embedding is invalid"""


class SearchBoundError(VisibilityError, ValueError):
    """Oracle target is too large for the requested search mode"""


class PathFamilyError(VisibilityError, ValueError):
    """Two paths of a path family intersect"""

    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class PipelineError(VisibilityError):
    """A pipeline precondition is violated (e.g. disconnected input)"""


class InternalInvariantError(VisibilityError, RuntimeError):
    """A construction produced output that failed its own verification"""


class DegenerateDrawingError(VisibilityError):
    """Collinear overlapping segments in a polyline drawing"""


class SerializationError(VisibilityError, ValueError):
    """Document is not a valid manifest or its payload is malformed"""
