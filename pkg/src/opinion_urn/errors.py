"""Exception hierarchy.

Validation failures are ``ValueError`` subclasses, numerical failures are
``ArithmeticError`` subclasses; everything shares the ``UrnError`` root so the
CLI can catch one type.
"""


class UrnError(Exception):
    """Base class for all opinion-urn errors."""


# Graph construction

class GraphError(UrnError, ValueError):
    """Invalid graph input."""


class EmptyVertexSet(GraphError):
    """Graph has no vertices."""


class VertexOutOfRange(GraphError):
    """Edge endpoint outside [0, n)."""


class SelfLoop(GraphError):
    """Edge joins a vertex to itself."""


class DuplicateEdge(GraphError):
    """Same unordered pair listed twice."""


class Disconnected(GraphError):
    """Some vertex is unreachable from vertex 0."""


class TooSmall(GraphError):
    """Generator parameter below its minimum."""


class ConnectivityRetryExhausted(GraphError):
    """Random generator failed to produce a connected graph."""


class GraphSpecError(GraphError):
    """Unparseable graph shorthand or graph file."""


# States and trajectories

class StateError(UrnError, ValueError):
    """Invalid urn state."""


class NonpositiveTotalWeight(StateError):
    """Some g0_i <= 0."""


class OpinionOutOfRange(StateError):
    """Some u0_i outside [0, g0_i]."""


class MismatchedStates(StateError):
    """States and step record do not come from one transition."""


class MissingStepRecords(StateError):
    """Trajectory was recorded without its steps."""


class EdgeIndexError(UrnError, IndexError):
    """Edge index outside [0, |E|)."""


# Numerics

class DimensionMismatch(UrnError, ValueError):
    """Operand shapes are incompatible."""


class NotSymmetric(UrnError, ValueError):
    """Matrix expected to be symmetric is not."""


class DomainError(UrnError, ValueError):
    """Argument outside the domain of a function."""


class NonConvergence(UrnError, ArithmeticError):
    """Iterative method exhausted its budget."""


class ZeroEigenvalueNotSimple(UrnError, ArithmeticError):
    """Influence matrix has a repeated zero eigenvalue."""


# Statistics

class InsufficientData(UrnError, ValueError):
    """Too few samples for the requested statistic."""


class NonpositiveValues(UrnError, ValueError):
    """Log-log fit received values <= 0."""


class TrajectoryMismatch(UrnError, AssertionError):
    """Coupled implementations diverged."""
