"""contframe: numerics for frames over measured index sets.

Builds step frames over partitions, certifies frame bounds spectrally,
applies and inverts the frame operator, and implements the scale-shift
(wavelet) and windowed (short-time Fourier) transforms as verified tight
frames.

Fourier convention throughout: fhat(gamma) = integral f(x) e^{-2 pi i x gamma} dx.
"""

__version__ = "0.1.0"

from .errors import (
    BoundOrderViolationError,
    ContframeError,
    CountMismatchError,
    DimensionTooLargeError,
    GridMismatchError,
    LengthMismatchError,
    MissingAdmissibilityError,
    NearDivergenceWarning,
    NonPositiveWeightError,
    NotAFrameError,
    NotAdmissibleError,
    SolverDivergedError,
    SpaceMismatchError,
    WrongSpaceKindError,
    ZeroScaleError,
    ZeroVectorError,
    ZeroWindowError,
)
from .spaces import SpaceDescriptor, Vec, basis_vector, dft, idft, inner, norm, sample_function
from .measure import Cell, Partition, make_partition, sigma_finite_cover
from .frames import (
    DiscretizedFrame,
    FrameReport,
    analysis,
    apply_frame_operator,
    dual_reconstruct,
    frame_bounds,
    frame_operator,
    sigma_finite_support,
    synthesis,
)
from .construct import (
    DiscreteSystem,
    bessel_only_map,
    build_difference_demo,
    infinite_members_finite_dim,
    inverse_power_profile,
    parseval_comparand,
    step_frame,
    unbounded_bessel,
    unbounded_frame,
)
from .fields import CoefficientField
from .wavelet import (
    ScaleShiftGrid,
    WaveletSpec,
    admissibility,
    cwt,
    dilate_translate,
    icwt,
    mexican_hat,
    morlet,
    scale_shift_grid,
    tight_energy_ratio,
)
from .gabor import (
    TimeFreqGrid,
    WindowSpec,
    gaussian_window,
    istft,
    orthogonality_relation,
    stft,
    time_freq_grid,
)
from .estimators import ContinuousWaveletTransform, FrameAnalyzer, ShortTimeFourier
from .verify import run_suite

__all__ = [
    "__version__",
    "SpaceDescriptor", "Vec", "inner", "norm", "dft", "idft", "basis_vector", "sample_function",
    "Cell", "Partition", "make_partition", "sigma_finite_cover",
    "DiscretizedFrame", "FrameReport", "analysis", "synthesis", "frame_operator",
    "apply_frame_operator", "frame_bounds", "dual_reconstruct", "sigma_finite_support",
    "DiscreteSystem", "step_frame", "infinite_members_finite_dim", "bessel_only_map",
    "unbounded_bessel", "unbounded_frame", "inverse_power_profile", "parseval_comparand",
    "build_difference_demo",
    "CoefficientField", "WaveletSpec", "ScaleShiftGrid", "scale_shift_grid", "admissibility",
    "dilate_translate", "cwt", "icwt", "mexican_hat", "morlet", "tight_energy_ratio",
    "WindowSpec", "TimeFreqGrid", "time_freq_grid", "gaussian_window", "stft", "istft",
    "orthogonality_relation",
    "ContinuousWaveletTransform", "ShortTimeFourier", "FrameAnalyzer",
    "run_suite",
    "ContframeError", "SpaceMismatchError", "WrongSpaceKindError", "LengthMismatchError",
    "CountMismatchError", "NonPositiveWeightError", "DimensionTooLargeError", "NotAFrameError",
    "SolverDivergedError", "ZeroVectorError", "ZeroScaleError", "ZeroWindowError",
    "BoundOrderViolationError", "GridMismatchError", "NotAdmissibleError",
    "MissingAdmissibilityError", "NearDivergenceWarning",
]
