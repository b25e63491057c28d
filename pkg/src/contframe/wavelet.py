"""Scale-shift analysis: admissibility, dilation, and the wavelet transform
as a discretized tight frame over scale-shift space with measure da db / a^2.

Scales are log-spaced cells on [a_min, a_max]; by default the negative-scale
branch is folded into doubled cell weights (exact for wavelets whose spectral
density is even, e.g. any real even wavelet), or it can be materialized with
`mirror=True`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _threads
from .errors import (
    GridMismatchError,
    MissingAdmissibilityError,
    NearDivergenceWarning,
    NotAdmissibleError,
    WrongSpaceKindError,
    ZeroScaleError,
    ZeroVectorError,
)
from .fields import CoefficientField
from .spaces import SpaceDescriptor, Vec, dft, norm, sample_function


@dataclass(frozen=True)
class WaveletSpec:
    """A sampled wavelet and, once computed, its admissibility constant."""

    psi: Vec
    C_psi: Optional[float] = None

    def __post_init__(self):
        if self.psi.space.kind != "sampled":
            raise WrongSpaceKindError("wavelets must live on a sampled grid")
        if norm(self.psi) == 0.0:
            raise ZeroVectorError("wavelet must be nonzero")
        if self.C_psi is not None and not (np.isfinite(self.C_psi) and self.C_psi > 0):
            raise ValueError(f"admissibility constant must be positive and finite, got {self.C_psi}")

    def with_admissibility(self, **kwargs) -> "WaveletSpec":
        return WaveletSpec(self.psi, admissibility(self.psi, **kwargs))


def mexican_hat(space: SpaceDescriptor) -> Vec:
    """psi(t) = (1 - t^2) exp(-t^2/2): real, even, zero-mean."""
    return sample_function(space, lambda t: (1.0 - t**2) * np.exp(-(t**2) / 2.0))


def morlet(space: SpaceDescriptor, center_freq: float = 2.5) -> Vec:
    """Modulated Gaussian exp(2 pi i f0 t) exp(-pi t^2).

    Not exactly zero-mean; the residual at gamma = 0 is exp(-pi f0^2), which
    passes the admissibility gate for f0 >= ~2.1 and trips it below.
    """
    return sample_function(
        space, lambda t: np.exp(2j * np.pi * center_freq * t) * np.exp(-np.pi * t**2)
    )


@dataclass(frozen=True)
class ScaleShiftGrid:
    """Quadrature grid over (a, b): log-spaced scale cells, uniform shifts.

    `scale_weights[i]` is the full measure mass of row i's cell,
    fold * da_i * db / a_mid^2, with fold = 2 when the negative branch is
    folded (`folded=True`) and 1 when it is materialized in `scales`.
    """

    space: SpaceDescriptor
    scales: np.ndarray = field(repr=False)
    scale_widths: np.ndarray = field(repr=False)
    shifts: np.ndarray = field(repr=False)
    shift_step: float = 0.0
    scale_weights: np.ndarray = field(repr=False, default=None)
    folded: bool = True

    @property
    def shape(self):
        return (self.scales.shape[0], self.shifts.shape[0])

    def weight_matrix(self) -> np.ndarray:
        return np.repeat(self.scale_weights[:, None], self.shifts.shape[0], axis=1)


def scale_shift_grid(space: SpaceDescriptor, a_min: float, a_max: float,
                     voices_per_octave: int = 16, mirror: bool = False,
                     shifts=None) -> ScaleShiftGrid:
    """Build the analysis grid: geometric scale cells (about `voices_per_octave`
    per octave, midpoint nodes) and shifts defaulting to the signal grid.
    """
    if space.kind != "sampled":
        raise WrongSpaceKindError("scale-shift grids require a sampled signal space")
    if not (a_min > 0 and a_max > a_min):
        raise ValueError(f"need 0 < a_min < a_max, got [{a_min}, {a_max}]")
    if voices_per_octave < 1:
        raise ValueError(f"need voices_per_octave >= 1, got {voices_per_octave}")
    n_cells = max(1, round(voices_per_octave * np.log2(a_max / a_min)))
    edges = a_min * (a_max / a_min) ** (np.arange(n_cells + 1) / n_cells)
    mids = 0.5 * (edges[:-1] + edges[1:])
    widths = np.diff(edges)

    if shifts is None:
        shifts = space.grid()
    else:
        shifts = np.asarray(shifts, dtype=float)
        if shifts.ndim != 1 or shifts.shape[0] < 1:
            raise ValueError("shifts must be a nonempty 1-D array")
    if shifts.shape[0] > 1:
        steps = np.diff(shifts)
        db = float(steps[0])
        if db <= 0 or not np.allclose(steps, db, rtol=1e-9, atol=1e-12 * abs(db)):
            raise ValueError("shifts must be uniformly increasing")
    else:
        db = space.dx

    base_w = widths * db / mids**2
    if mirror:
        scales = np.concatenate([mids, -mids])
        scale_widths = np.concatenate([widths, widths])
        scale_weights = np.concatenate([base_w, base_w])
        folded = False
    else:
        scales = mids
        scale_widths = widths
        scale_weights = 2.0 * base_w
        folded = True
    return ScaleShiftGrid(space, scales, scale_widths, shifts, db, scale_weights, folded)


def _padded(psi: Vec, pad: int) -> Vec:
    """Embed psi in a `pad` times longer grid (same step, zeros outside).

    Widening refines the frequency step of `dft` by the same factor while
    leaving the transform's values at shared frequencies unchanged.
    """
    if pad == 1:
        return psi
    n = psi.space.count
    extra = (pad - 1) * n
    left = extra // 2
    dx = psi.space.dx
    xmin = psi.space.xmin - left * dx
    entries = np.zeros(pad * n, dtype=np.complex128)
    entries[left:left + n] = psi.entries
    return Vec(SpaceDescriptor.sampled(xmin, xmin + pad * n * dx, pad * n), entries)


def _spectral_terms(psi: Vec, pad: int = 1):
    """Per-bin contributions |psihat|^2/|gamma| * dgamma, gamma = 0 excluded.

    Returns (gamma array, term array) with matching masks.
    """
    fhat = dft(_padded(psi, pad))
    gamma = fhat.space.grid()
    dgamma = fhat.space.dx
    mask = gamma != 0.0
    terms = np.zeros_like(gamma)
    terms[mask] = (np.abs(fhat.entries[mask]) ** 2 / np.abs(gamma[mask])) * dgamma
    return gamma, terms


def admissibility(psi: Vec, dc_tol: float = 1e-6, near_fraction: float = 0.1,
                  refinement_tol: float = 0.01) -> float:
    """C = sum over nonzero bins of |psihat(gamma)|^2 / |gamma| * dgamma.

    Rejects wavelets whose spectrum does not vanish at gamma = 0: either
    directly (|psihat(0)| > dc_tol * max|psihat|) or because the sum keeps
    growing when the frequency grid is refined twofold, which happens exactly
    when the interpolated spectrum piles mass onto the new bins next to zero.
    Warns with NearDivergenceWarning when the two bins adjacent to gamma = 0
    carry more than `near_fraction` of the total, meaning the constant is
    fragile.
    """
    if psi.space.kind != "sampled":
        raise WrongSpaceKindError("admissibility requires a sampled wavelet")
    fhat = dft(psi)
    peak = float(np.abs(fhat.entries).max())
    if peak == 0.0:
        raise ZeroVectorError("wavelet must be nonzero")
    dc = float(np.abs(fhat.entries[psi.space.count // 2]))
    if dc > dc_tol * peak:
        raise NotAdmissibleError(
            f"spectrum at gamma=0 is {dc:.3e} (> {dc_tol:g} of peak {peak:.3e})"
        )

    gamma1, terms1 = _spectral_terms(psi, pad=1)
    total = float(terms1.sum())
    if total == 0.0:
        raise NotAdmissibleError("spectral density vanishes away from gamma=0")

    _, terms2 = _spectral_terms(psi, pad=2)
    refined = float(terms2.sum())
    if refined - total > refinement_tol * refined:
        raise NotAdmissibleError(
            f"admissibility sum keeps growing under refinement "
            f"({total:.3e} -> {refined:.3e})"
        )

    half = psi.space.count // 2
    near = float(terms1[half - 1] + terms1[half + 1]) if half + 1 < terms1.shape[0] else float(
        terms1[half - 1]
    )
    if near > near_fraction * total:
        warnings.warn(
            NearDivergenceWarning(
                f"bins adjacent to gamma=0 carry {near / total:.1%} of the admissibility sum"
            )
        )
    return total


def dilate_translate(psi: Vec, a: float, b: float) -> Vec:
    """|a|^(-1/2) psi((x - b)/a) resampled on psi's own grid.

    Values are linearly interpolated and zero outside psi's support.
    """
    if psi.space.kind != "sampled":
        raise WrongSpaceKindError("dilate_translate requires a sampled wavelet")
    if a == 0:
        raise ZeroScaleError("dilation scale must be nonzero")
    x = psi.space.grid()
    u = (x - b) / a
    re = np.interp(u, x, psi.entries.real, left=0.0, right=0.0)
    im = np.interp(u, x, psi.entries.imag, left=0.0, right=0.0)
    return Vec(psi.space, (re + 1j * im) / np.sqrt(abs(a)))


def _template_lags(psi: Vec, a: float, lags: np.ndarray) -> np.ndarray:
    """psi^{a,*} evaluated on signal lags: |a|^(-1/2) psi(lag/a), zero outside."""
    if a == 0:
        raise ZeroScaleError("dilation scale must be nonzero")
    x = psi.space.grid()
    u = lags / a
    re = np.interp(u, x, psi.entries.real, left=0.0, right=0.0)
    im = np.interp(u, x, psi.entries.imag, left=0.0, right=0.0)
    return (re + 1j * im) / np.sqrt(abs(a))


def _linear_convolve(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Full linear convolution via zero-padded FFTs (complex, exact lengths)."""
    n = x.shape[0] + y.shape[0] - 1
    m = 1 << max(n - 1, 1).bit_length()
    out = np.fft.ifft(np.fft.fft(x, m) * np.fft.fft(y, m))
    return out[:n]


def _lattice_indices(shifts: np.ndarray, space: SpaceDescriptor) -> np.ndarray:
    rel = (shifts - space.xmin) / space.dx
    idx = np.round(rel).astype(int)
    if np.any(np.abs(rel - idx) > 1e-9) or np.any(idx < 0) or np.any(idx >= space.count):
        raise GridMismatchError("shifts must lie on the signal's sample lattice")
    return idx


def cwt(f: Vec, w: WaveletSpec, grid: ScaleShiftGrid) -> CoefficientField:
    """values[i, l] = <f, psi^{a_i, b_l}>, one FFT cross-correlation per scale.

    Matches inner(f, dilate_translate(psi, a_i, b_l)) up to summation
    rounding; shifts must sit on the signal lattice.
    """
    if f.space.kind != "sampled":
        raise WrongSpaceKindError("cwt requires a sampled signal")
    if grid.space != f.space:
        raise GridMismatchError("grid was built for a different signal space")
    n = f.space.count
    dx = f.space.dx
    p = _lattice_indices(grid.shifts, f.space)
    lags = np.arange(-(n - 1), n) * dx

    def row(i):
        tau = _template_lags(w.psi, float(grid.scales[i]), lags)
        full = _linear_convolve(f.entries, np.conj(tau[::-1]))
        return dx * full[p + (n - 1)]

    rows = _threads.ordered_map(row, range(grid.scales.shape[0]))
    return CoefficientField(grid, np.vstack(rows))


def icwt(field: CoefficientField, w: WaveletSpec) -> Vec:
    """(1/C_psi) * sum over cells of w_cell * value * psi^{a,b} on the signal grid."""
    grid = field.grid
    if not isinstance(grid, ScaleShiftGrid):
        raise GridMismatchError("icwt needs a scale-shift coefficient field")
    if w.C_psi is None:
        raise MissingAdmissibilityError(
            "admissibility constant not set; compute it before inverting"
        )
    space = grid.space
    n = space.count
    dx = space.dx
    p = _lattice_indices(grid.shifts, space)
    lags = np.arange(-(n - 1), n) * dx

    def row(i):
        tau = _template_lags(w.psi, float(grid.scales[i]), lags)
        vfull = np.zeros(n, dtype=np.complex128)
        vfull[p] = field.values[i]
        full = _linear_convolve(vfull, tau)
        return grid.scale_weights[i] * full[n - 1:2 * n - 1]

    rows = _threads.ordered_map(row, range(grid.scales.shape[0]))
    acc = np.zeros(n, dtype=np.complex128)
    for r in rows:  # fixed scale order
        acc += r
    return Vec(space, acc / w.C_psi)


def tight_energy_ratio(field: CoefficientField, C_psi: float, f: Vec) -> float:
    """(1/C_psi) * weighted field energy / ||f||^2, the tight-frame diagnostic."""
    nf = norm(f)
    if nf == 0.0:
        raise ZeroVectorError("signal must be nonzero")
    return field.weighted_energy() / (C_psi * nf**2)
