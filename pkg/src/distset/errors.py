"""Exception hierarchy.

Every error raised by the library derives from :class:`DistSetError`,
so callers (notably the CLI) can distinguish input/contract problems
from genuine bugs.
"""


class DistSetError(Exception):
    """Base class for all library errors."""


class ParameterError(DistSetError):
    """A precondition on an argument was violated."""


class MembershipError(DistSetError):
    """A value that must belong to a distance set does not."""


class RangeError(DistSetError):
    """A value lies outside the range an operation can serve."""


class SubsetError(DistSetError):
    """A set that must be contained in another is not."""


class NonterminationError(DistSetError):
    """An iteration exceeded its proven bound; indicates a bug."""


class NotAWalkError(DistSetError):
    """A vertex sequence is not a walk of the graph."""


class DisconnectedError(DistSetError):
    """Two vertices are not joined by any walk."""


class EdgeExistsError(DistSetError):
    """Attempted to add an edge that is already present."""


class NotMetricError(DistSetError):
    """A graph operation requires a metric graph and got a non-metric one."""


class MetricityError(DistSetError):
    """A construction step produced a non-metric object that the theory
    guarantees to be metric; indicates a bug or a corrupted input."""


class HypothesisError(DistSetError):
    """The pairing bound required by the bridge construction fails."""


class BudgetError(DistSetError):
    """A combinatorial search exceeded its node budget."""


class NotAnEmbeddingError(DistSetError):
    """A claimed order-preserving isometric embedding is not one."""


class PartitionError(DistSetError):
    """A point set does not form a proper two-part partition."""


class CheckFailedError(DistSetError):
    """A required structural check (four-values / associativity) failed."""


class CompletionError(DistSetError):
    """Graph completion failed while extending a metric space."""
