"""Exception hierarchy shared by all catgossip modules."""


class GossipError(Exception):
    """Base class for all library errors."""


class DomainError(GossipError):
    """Geometric precondition violated (antipodal pair, point outside the
    convexity radius, negative arc length, ...)."""


class TagMismatch(GossipError):
    """Arguments do not belong to the same tagged space (or curvature)."""


class NumericalError(GossipError):
    """A numerical kernel failed (non-positive eigenvalue, lost definiteness)."""


class DisconnectedGraph(GossipError):
    """The communication graph is not connected."""


class InvalidEdge(GossipError):
    """Self-loop, duplicate edge, or vertex index out of range."""


class InfeasibleTriangle(GossipError):
    """Side lengths admit no comparison triangle at the requested curvature."""


class UnsupportedSpace(GossipError):
    """The operation is not defined on the requested space."""


class SizeMismatch(GossipError):
    """Configuration and graph sizes disagree."""


class DegenerateSeries(GossipError):
    """Too few usable points for a log-slope fit."""


class LengthMismatch(GossipError):
    """Trial series of unequal length."""


class InitializationError(GossipError):
    """Initial sampling failed to satisfy the required diameter bound."""
