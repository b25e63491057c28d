"""Windowed time-frequency analysis on a truncated rectangle of the
time-frequency plane with Lebesgue cell weights dy * dgamma.

The transform of f against window g is

    values[m, l] = sum_j f(x_j) conj(g(x_j - y_l)) exp(-2 pi i x_j gamma_m) dx,

evaluated with exact complex exponentials per frequency row, so the
frequency grid need not align with the signal's DFT bins.  Shifts must sit
on the signal lattice so the translated window uses exact samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _threads
from .errors import GridMismatchError, WrongSpaceKindError, ZeroWindowError
from .fields import CoefficientField
from .spaces import SpaceDescriptor, Vec, inner, norm, sample_function


@dataclass(frozen=True)
class WindowSpec:
    g: Vec
    norm_sq: float = 0.0

    def __post_init__(self):
        if self.g.space.kind != "sampled":
            raise WrongSpaceKindError("windows must live on a sampled grid")
        n2 = norm(self.g) ** 2
        if n2 == 0.0:
            raise ZeroWindowError("analysis window must be nonzero")
        object.__setattr__(self, "norm_sq", float(n2))


def gaussian_window(space: SpaceDescriptor, normalized: bool = True) -> WindowSpec:
    """exp(-pi t^2), optionally scaled to unit energy on the given grid."""
    g = sample_function(space, lambda t: np.exp(-np.pi * t**2))
    if normalized:
        g = (1.0 / norm(g)) * g
    return WindowSpec(g)


@dataclass(frozen=True)
class TimeFreqGrid:
    """Uniform shifts y_l and frequencies gamma_m; every cell has mass dy * dgamma."""

    space: SpaceDescriptor
    shifts: np.ndarray = field(repr=False)
    freqs: np.ndarray = field(repr=False)
    dy: float = 0.0
    dgamma: float = 0.0

    @property
    def shape(self):
        return (self.freqs.shape[0], self.shifts.shape[0])

    @property
    def cell_weight(self) -> float:
        return self.dy * self.dgamma

    def weight_matrix(self) -> np.ndarray:
        return np.full(self.shape, self.cell_weight)


def _uniform_axis(lo: float, step: float, hi: float) -> np.ndarray:
    if step <= 0:
        raise ValueError(f"grid step must be positive, got {step}")
    n = int(np.floor((hi - lo) / step + 0.5)) + 1
    if n < 1:
        raise ValueError(f"empty axis [{lo}, {hi}] at step {step}")
    return lo + step * np.arange(n)


def time_freq_grid(space: SpaceDescriptor, ymin: float, ymax: float, dy: float,
                   gmin: float, gmax: float, dgamma: float) -> TimeFreqGrid:
    if space.kind != "sampled":
        raise WrongSpaceKindError("time-frequency grids require a sampled signal space")
    return TimeFreqGrid(
        space,
        _uniform_axis(ymin, dy, ymax),
        _uniform_axis(gmin, dgamma, gmax),
        float(dy),
        float(dgamma),
    )


def _shift_indices(shifts: np.ndarray, space: SpaceDescriptor) -> np.ndarray:
    rel = shifts / space.dx
    idx = np.round(rel).astype(int)
    if np.any(np.abs(rel - idx) > 1e-9):
        raise GridMismatchError("window shifts must be multiples of the signal step")
    return idx


def stft(f: Vec, win: WindowSpec, grid: TimeFreqGrid) -> CoefficientField:
    """Windowed transform values on the grid; rows are frequencies."""
    if f.space.kind != "sampled":
        raise WrongSpaceKindError("stft requires a sampled signal")
    if grid.space != f.space:
        raise GridMismatchError("grid was built for a different signal space")
    if win.g.space != f.space:
        raise GridMismatchError("window must be sampled on the signal's grid")
    n = f.space.count
    dx = f.space.dx
    x = f.space.grid()
    shift_idx = _shift_indices(grid.shifts, f.space)
    gconj = np.conj(win.g.entries)
    # kernel[m, j] = exp(-2 pi i x_j gamma_m) * dx
    kernel = np.exp(-2j * np.pi * np.outer(grid.freqs, x)) * dx

    def col(l):
        s = shift_idx[l]
        win_l = np.zeros(n, dtype=np.complex128)
        if s >= 0:
            m = n - s
            if m > 0:
                win_l[s:] = gconj[:m]
        else:
            m = n + s
            if m > 0:
                win_l[:m] = gconj[-s:]
        return kernel @ (f.entries * win_l)

    cols = _threads.ordered_map(col, range(shift_idx.shape[0]))
    return CoefficientField(grid, np.stack(cols, axis=1))


def istft(field: CoefficientField, win: WindowSpec) -> Vec:
    """(1/||g||^2) * sum over cells of dy dgamma * value * translated-modulated window."""
    grid = field.grid
    if not isinstance(grid, TimeFreqGrid):
        raise GridMismatchError("istft needs a time-frequency coefficient field")
    if win.norm_sq == 0.0:
        raise ZeroWindowError("analysis window must be nonzero")
    if win.g.space != grid.space:
        raise GridMismatchError("window must be sampled on the signal's grid")
    space = grid.space
    n = space.count
    x = space.grid()
    shift_idx = _shift_indices(grid.shifts, space)
    # synth[j, m] = exp(+2 pi i x_j gamma_m)
    synth = np.exp(2j * np.pi * np.outer(x, grid.freqs))
    modulated = synth @ field.values  # (n, n_shifts)
    g = win.g.entries
    acc = np.zeros(n, dtype=np.complex128)
    for l, s in enumerate(shift_idx):  # fixed shift order
        win_l = np.zeros(n, dtype=np.complex128)
        if s >= 0:
            m = n - s
            if m > 0:
                win_l[s:] = g[:m]
        else:
            m = n + s
            if m > 0:
                win_l[:m] = g[-s:]
        acc += modulated[:, l] * win_l
    return Vec(space, acc * (grid.cell_weight / win.norm_sq))


def orthogonality_relation(f1: Vec, f2: Vec, g1: Vec, g2: Vec, grid: TimeFreqGrid):
    """Compare sum w * T1 * conj(T2) against <f1,f2><g2,g1>.

    Returns (lhs, rhs, gap) with gap normalized by the four input norms.
    """
    t1 = stft(f1, WindowSpec(g1), grid)
    t2 = stft(f2, WindowSpec(g2), grid)
    lhs = complex(grid.cell_weight * np.vdot(t2.values, t1.values))
    rhs = inner(f1, f2) * inner(g2, g1)
    scale = norm(f1) * norm(f2) * norm(g1) * norm(g2)
    gap = abs(lhs - rhs) / scale if scale > 0 else abs(lhs - rhs)
    return lhs, rhs, gap
