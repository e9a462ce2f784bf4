"""Exception types shared across the package."""
from __future__ import annotations


class TetracensusError(Exception):
    """Base class for all errors raised by this package."""


class LoopRejected(TetracensusError):
    """An edge with equal endpoints was supplied."""


class IndexOutOfRange(TetracensusError):
    """A vertex or edge index is outside the host domain."""


class InvalidParameter(TetracensusError):
    """A family or construction parameter violates its validity range."""


class NotSimple(TetracensusError):
    """A simple graph was required but parallel edges are present."""


class NotSeparating(TetracensusError):
    """An edge relation puts two adjacent edges in the same class."""


class BadSplit(TetracensusError):
    """A partition is not a split at white vertices."""


class NotBiTransitive(TetracensusError):
    """The supplied group is not edge-transitive and color-preserving."""


class NotABlockSystem(TetracensusError):
    """The supplied blocks are not an imprimitivity system of the action."""


class TransportInconsistent(TetracensusError):
    """Transporting local blocks around an orbit gave conflicting answers."""


class ComponentsNotIsomorphic(TetracensusError):
    """Dissection components are not pairwise isomorphic."""


class NotAPairing(TetracensusError):
    """An edge partition was expected to be a pairing but is not."""


class DomainMismatch(TetracensusError):
    """Permutations act on different domains."""


class NotTransitive(TetracensusError):
    """A transitive action was required."""


class NotSubgroup(TetracensusError):
    """A group is not contained in the ambient group."""


class NotDartTransitive(TetracensusError):
    """The graph is not dart-transitive, so the enumeration does not apply."""


class BoundExceeded(TetracensusError):
    """A group order exceeds the search bound; a catalog route is needed."""

    def __init__(self, order: int, bound: int):
        super().__init__(f"group order {order} exceeds search bound {bound}")
        self.order = order
        self.bound = bound


class SearchBudgetExceeded(TetracensusError):
    """The backtracking search ran out of its node budget."""
