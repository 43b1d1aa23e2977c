"""Exception types shared across the package."""


class QuiverError(Exception):
    """Base class for all errors raised by this package."""


class InvalidMatrixError(QuiverError):
    """Input data does not describe a skew-symmetrizable exchange matrix."""


class FrozenVertexError(QuiverError):
    """Mutation requested at a frozen vertex."""


class EntryOverflowError(QuiverError):
    """A matrix entry left the supported 64-bit range during mutation."""


class InvalidPermutationError(QuiverError):
    """Permutation does not preserve the frozen set or the vertex weights."""


class WordSyntaxError(QuiverError):
    """A mutation word could not be parsed; carries the offending position."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class NotALoopError(QuiverError):
    """A word expected to be a mutation loop does not return to the
    initial exchange matrix.  Carries both matrices for debugging."""

    def __init__(self, message, initial=None, final=None):
        super().__init__(message)
        self.initial = initial
        self.final = final


class CapExceededError(QuiverError):
    """Class enumeration hit the size cap (infinite or too-large class)."""

    def __init__(self, message, cap):
        super().__init__(message)
        self.cap = cap


class InvertedEdgeError(QuiverError):
    """An oriented mutation edge is equivalent to its own reverse.

    For the classes treated here this contradicts the non-inversion
    property of the modular graph, so callers treat it as a hard
    consistency failure rather than a recoverable condition.
    """


class EliminationError(QuiverError):
    """A word cannot be pushed through the elimination homomorphism."""
