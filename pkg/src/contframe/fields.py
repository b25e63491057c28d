"""Transform output container shared by the wavelet and window transforms."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class CoefficientField:
    """Coefficient values on a 2-D analysis grid.

    `grid` supplies the node layout and quadrature weights (a scale-shift
    grid or a time-frequency grid); `values[i, l]` is the coefficient at
    row node i (scale or frequency) and column node l (shift).
    """

    grid: object
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        object.__setattr__(self, "values", v)
        if v.shape != self.grid.shape:
            raise ValueError(f"values shape {v.shape} does not match grid shape {self.grid.shape}")

    def weighted_energy(self) -> float:
        """sum over nodes of w * |value|^2, reduced in fixed row order."""
        w = self.grid.weight_matrix()
        rows = (np.abs(self.values) ** 2 * w).sum(axis=1)
        return float(sum(rows))
