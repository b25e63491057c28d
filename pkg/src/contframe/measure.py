"""Measured index sets: finite partitions and truncated countable covers.

A Partition is an ordered list of disjoint cells with strictly positive
finite weights (the cell masses).  Countable covers of infinite total mass
are represented by their first K cells with `truncated=True`; no infinity
is ever stored, and convergence under K-refinement stands in for the
infinite case downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NonPositiveWeightError


@dataclass(frozen=True)
class Cell:
    id: int
    weight: float

    def __post_init__(self):
        w = self.weight
        if not (np.isfinite(w) and w > 0):
            raise NonPositiveWeightError(self.id, w)


@dataclass(frozen=True)
class Partition:
    """Ordered disjoint cells; `truncated` marks the first-K-cells view of a countable cover."""

    cells: tuple
    truncated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        ids = [c.id for c in self.cells]
        if len(set(ids)) != len(ids):
            raise ValueError(f"cell ids must be unique, got {ids}")
        for i, c in enumerate(self.cells):
            if not (np.isfinite(c.weight) and c.weight > 0):
                raise NonPositiveWeightError(i, c.weight)

    @property
    def total(self) -> float:
        return float(sum(c.weight for c in self.cells))

    @property
    def truncation_index(self) -> Optional[int]:
        """Number of retained cells K when this is a truncated cover, else None."""
        return len(self.cells) if self.truncated else None

    def weights(self) -> np.ndarray:
        return np.array([c.weight for c in self.cells], dtype=float)

    def __len__(self) -> int:
        return len(self.cells)


def make_partition(weights, truncated: bool = False) -> Partition:
    """Partition with cells in input order, ids 0..n-1.

    Raises NonPositiveWeightError naming the first offending index when a
    weight is zero, negative, or non-finite.
    """
    ws = [float(w) for w in weights]
    for i, w in enumerate(ws):
        if not (np.isfinite(w) and w > 0):
            raise NonPositiveWeightError(i, w)
    return Partition(tuple(Cell(i, w) for i, w in enumerate(ws)), truncated=truncated)


def sigma_finite_cover(rule: str, K: int, ratio: float | None = None) -> Partition:
    """First K cells of a countable cover; `unit` gives weight 1 per cell,
    `geometric` gives weights ratio**k (k = 0..K-1).

    Extending K never changes the first K cells.
    """
    if K < 1:
        raise ValueError(f"need K >= 1, got {K}")
    if rule == "unit":
        ws = [1.0] * K
    elif rule == "geometric":
        if ratio is None or not (np.isfinite(ratio) and ratio > 0):
            raise ValueError(f"geometric rule needs ratio > 0, got {ratio}")
        ws = [float(ratio) ** k for k in range(K)]
    else:
        raise ValueError(f"unknown cover rule {rule!r}; expected 'unit' or 'geometric'")
    return make_partition(ws, truncated=True)


def partition_to_json(p: Partition) -> dict:
    return {"partition": {"weights": [c.weight for c in p.cells], "truncated": p.truncated}}


def partition_from_json(obj: dict) -> Partition:
    try:
        body = obj["partition"]
        return make_partition(body["weights"], truncated=bool(body.get("truncated", False)))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed partition JSON: {exc}") from exc
