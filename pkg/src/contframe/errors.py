"""Exception hierarchy shared by all contframe modules."""


class ContframeError(Exception):
    """Base class for all contframe errors."""


class SpaceMismatchError(ContframeError):
    """Two vectors (or a vector and a frame) live in different spaces."""


class WrongSpaceKindError(ContframeError):
    """Operation requires a sampled (or coordinate) space and got the other."""


class LengthMismatchError(ContframeError):
    """Entry or coefficient count does not match the space length or node count."""


class CountMismatchError(ContframeError):
    """Partition cell count does not match the system's vector count."""


class NonPositiveWeightError(ContframeError):
    """A measure weight is zero, negative, or non-finite."""

    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"weight at index {index} must be positive and finite, got {value!r}")


class DimensionTooLargeError(ContframeError):
    """Materializing the frame operator would exceed the dense-size limit.

    Use apply_frame_operator (matrix-free) instead.
    """


class NotAFrameError(ContframeError):
    """Lower frame bound is below tolerance; dual reconstruction undefined."""


class SolverDivergedError(ContframeError):
    """Iterative positive-definite solve did not converge."""

    def __init__(self, iterations, residual):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"iterative solve stopped after {iterations} iterations with relative residual {residual:.3e}"
        )


class ZeroVectorError(ContframeError):
    """A construction requires a nonzero vector."""


class ZeroScaleError(ContframeError):
    """Dilation scale must be nonzero."""


class ZeroWindowError(ContframeError):
    """Analysis window must be nonzero."""


class BoundOrderViolationError(ContframeError):
    """Difference construction requires the Bessel bound below the frame's lower bound."""


class GridMismatchError(ContframeError):
    """Signal, template, and grid do not share a compatible sampling."""


class NotAdmissibleError(ContframeError):
    """Wavelet fails the admissibility test (nonzero mean / divergent integrand)."""


class MissingAdmissibilityError(ContframeError):
    """Inverse transform requires an admissibility constant that was never computed."""


class NearDivergenceWarning(UserWarning):
    """Low-frequency bins dominate the admissibility integral; constant is fragile."""
