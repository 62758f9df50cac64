"""Exception types raised across the package."""


class RelCrError(Exception):
    """Base class for all package errors."""


class AmbientMismatch(RelCrError, ValueError):
    """Two subspaces (or a vector and a subspace) live in different ambient spaces."""


class SingularMatrix(RelCrError, ValueError):
    pass


class NotInH(RelCrError, ValueError):
    """A cocharacter or conjugator violates the constraints defining H."""


class NotInP(RelCrError, ValueError):
    """A tuple entry is not in the parabolic P_lambda."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotStable(RelCrError, ValueError):
    """A subspace was expected to be stable under the generator tuple."""


class UnsupportedHSpec(RelCrError, ValueError):
    pass


class RadicalUndecided(RelCrError):
    """Small characteristic and the lattice fallback is over budget."""


class BudgetExceeded(RelCrError):
    """A brute-force enumeration would exceed its size bound."""
