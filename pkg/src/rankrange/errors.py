"""Exception types raised across the package."""


class RankRangeError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitianError(RankRangeError):
    """Input matrix is not Hermitian within the configured tolerance."""


class NonFiniteError(RankRangeError):
    """Input contains NaN or infinite entries."""


class DimensionMismatchError(RankRangeError):
    """Operands have incompatible shapes or ambient dimensions."""


class UnboundedRegionError(RankRangeError):
    """Half-plane family does not enclose a bounded region."""


class EmptyRegionError(RankRangeError):
    """Operation requires a nonempty region."""


class CombinatorialLimitError(RankRangeError):
    """Exact enumeration would exceed the configured subset budget."""


class ThresholdViolatedError(RankRangeError):
    """Requested (n, k) pair is on the wrong side of the 3(k-1) < n threshold."""


class EmptyIntersectionError(RankRangeError):
    """Subspace intersection came out smaller than the guaranteed dimension."""


class NoConvergenceError(RankRangeError):
    """Iterative solver failed to reach the requested residual."""

    def __init__(self, message: str, best_residual: float = float("nan")):
        super().__init__(message)
        self.best_residual = best_residual


class SynthesisError(RankRangeError):
    """Isometry synthesis failed; carries the best residual reached."""

    def __init__(self, message: str, best_residual: float = float("nan")):
        super().__init__(message)
        self.best_residual = best_residual


class EmptinessLostError(RankRangeError):
    """Perturbation destroyed provable emptiness; carries the largest safe size."""

    def __init__(self, message: str, largest_safe_epsilon: float = 0.0):
        super().__init__(message)
        self.largest_safe_epsilon = largest_safe_epsilon
