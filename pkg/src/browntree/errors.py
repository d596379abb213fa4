"""Exception types shared across the library."""


class BrownTreeError(Exception):
    """Base class for all library-specific errors."""


class DomainError(BrownTreeError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NonConvergence(BrownTreeError):
    """A series failed to reach the requested tolerance within max_terms."""

    def __init__(self, message, terms_used=None, bound=None):
        super().__init__(message)
        self.terms_used = terms_used
        self.bound = bound


class BracketFailure(BrownTreeError):
    """Quantile root bracket does not straddle the target probability."""


class QuadratureFailure(BrownTreeError):
    """Adaptive quadrature did not converge to the requested tolerance."""


class NotATree(BrownTreeError, ValueError):
    """An adjacency structure is not a tree (wrong edge count or disconnected)."""
