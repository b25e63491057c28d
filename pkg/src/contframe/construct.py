"""Explicit frame constructions: step frames over partitions, rank-deficient
Bessel maps, and the two norm-unbounded examples (an integrable but unbounded
weight profile, and a frame built as the difference of a frame and a small
Bessel map).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import (
    BoundOrderViolationError,
    CountMismatchError,
    SpaceMismatchError,
    ZeroVectorError,
)
from .frames import DiscretizedFrame, frame_bounds
from .measure import Partition, make_partition
from .spaces import SpaceDescriptor, Vec, norm


@dataclass(frozen=True)
class DiscreteSystem:
    """A finite family of vectors, optionally carrying known frame bounds."""

    vectors: tuple
    declared_bounds: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        vecs = tuple(self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if not vecs:
            raise ValueError("a discrete system needs at least one vector")
        space = vecs[0].space
        for v in vecs[1:]:
            if v.space != space:
                raise SpaceMismatchError("all system vectors must share a space")

    @property
    def space(self) -> SpaceDescriptor:
        return self.vectors[0].space


def step_frame(partition: Partition, sys: DiscreteSystem, nodes=None) -> DiscretizedFrame:
    """Piecewise-constant frame: node j carries mass mu_j and vector f_j/sqrt(mu_j).

    The mass and the normalization cancel in every energy sum, so the
    certified bounds equal those of the plain vector system no matter the
    partition: sum_j w_j |<f, F_j>|^2 = sum_j |<f, f_j>|^2 exactly.

    `nodes` defaults to the partition's cell ids.
    """
    if len(partition) != len(sys.vectors):
        raise CountMismatchError(
            f"partition has {len(partition)} cells but system has {len(sys.vectors)} vectors"
        )
    w = partition.weights()
    if nodes is None:
        nodes = tuple(c.id for c in partition.cells)
    stack = np.empty((len(w), sys.space.length), dtype=np.complex128)
    scale = 1.0 / np.sqrt(w)
    for j, v in enumerate(sys.vectors):
        stack[j] = scale[j] * v.entries
    return DiscretizedFrame(sys.space, tuple(nodes), w, stack)


def infinite_members_finite_dim(dim: int, levels: int, decay: float) -> DiscreteSystem:
    """Geometrically damped copies of an orthonormal basis: {decay^m e_i}.

    With `levels` copies the system is tight with bound
    sum_{m<levels} decay^(2m); as levels grows this converges to the
    infinite-family bound 1/(1-decay^2).
    """
    if dim < 1 or levels < 1:
        raise ValueError(f"need dim >= 1 and levels >= 1, got dim={dim}, levels={levels}")
    if not 0.0 < decay < 1.0:
        raise ValueError(f"decay must lie in (0,1), got {decay}")
    space = SpaceDescriptor.coordinate(dim)
    eye = np.eye(dim, dtype=np.complex128)
    vectors = []
    for m in range(levels):
        amp = decay**m
        for i in range(dim):
            vectors.append(Vec(space, amp * eye[i]))
    bound = float(sum(decay ** (2 * m) for m in range(levels)))
    return DiscreteSystem(tuple(vectors), declared_bounds=(bound, bound))


def bessel_only_map(partition: Partition, sys: DiscreteSystem) -> DiscretizedFrame:
    """Step frame whose vectors cannot span the ambient space (dim > cell count),
    so only the upper bound survives.
    """
    n_cells = len(partition)
    if sys.space.length <= n_cells:
        raise ValueError(
            f"ambient dimension {sys.space.length} must exceed the cell count {n_cells}"
        )
    return step_frame(partition, sys)


def inverse_power_profile(x: np.ndarray) -> np.ndarray:
    """Integrable but unbounded weight profile:

        b(x) = |x|^(-1/2)  for 0 < |x| < 1,
               |x|^(-2)    for |x| >= 1,
               0           at x = 0.

    Integral over the whole line is 4 + 2 = 6; the sup is infinite near 0.
    """
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    out = np.zeros_like(ax)
    small = (ax > 0) & (ax < 1)
    large = ax >= 1
    out[small] = 1.0 / np.sqrt(ax[small])
    out[large] = 1.0 / ax[large] ** 2
    return out


def unbounded_bessel(h: Vec, L: float, K: int) -> DiscretizedFrame:
    """Rank-one Bessel map F(omega) = sqrt(b(omega)) h on K midpoint cells of [-L, L].

    Node norms blow up near omega = 0 as |omega|^(-1/4) ||h||, yet the
    certified upper bound stays below 6 ||h||^2 (the profile's integral) and
    climbs toward it monotonically under refinement.

    K must be even so no midpoint lands on omega = 0.
    """
    if norm(h) == 0.0:
        raise ZeroVectorError("the generating vector h must be nonzero")
    if L <= 0:
        raise ValueError(f"need L > 0, got {L}")
    if K < 2 or K % 2 != 0:
        raise ValueError(f"need an even node count K >= 2, got {K}")
    width = 2.0 * L / K
    mids = -L + width * (np.arange(K) + 0.5)
    amp = np.sqrt(inverse_power_profile(mids))
    stack = amp[:, None] * h.entries[None, :]
    weights = np.full(K, width)
    return DiscretizedFrame(h.space, tuple(float(m) for m in mids), weights, stack)


def unbounded_frame(fr_bessel: DiscretizedFrame, fr_frame: DiscretizedFrame) -> DiscretizedFrame:
    """Node-wise difference (frame minus Bessel map) on a shared node set.

    Requires the Bessel map's certified upper bound B1 to sit strictly below
    the frame's certified lower bound A2; the difference is then itself a
    frame with lower bound at least (sqrt(A2) - sqrt(B1))^2 and upper bound
    at most (sqrt(B1) + sqrt(B2))^2.
    """
    if fr_bessel.space != fr_frame.space:
        raise SpaceMismatchError("both maps must live in the same space")
    if fr_bessel.nodes != fr_frame.nodes:
        raise ValueError("both maps must share the same node set")
    if not np.array_equal(fr_bessel.weights, fr_frame.weights):
        raise ValueError("both maps must share the same weights")
    B1 = frame_bounds(fr_bessel).B
    A2 = frame_bounds(fr_frame).A
    if B1 >= A2:
        raise BoundOrderViolationError(
            f"need Bessel bound below the frame's lower bound, got B1={B1} >= A2={A2}"
        )
    return DiscretizedFrame(
        fr_frame.space,
        fr_frame.nodes,
        fr_frame.weights.copy(),
        fr_frame.stack - fr_bessel.stack,
    )


def parseval_comparand(weights, space: SpaceDescriptor, nodes=None,
                       mirrored_signs: bool = True) -> DiscretizedFrame:
    """A Parseval frame on an arbitrary positive weight sequence.

    Nodes cycle through the coordinate axes; each vector is a scaled basis
    vector, with the scaling chosen so the per-axis masses sum to one.  With
    `mirrored_signs` the node at position j and its mirror K-1-j share an
    axis with opposite signs, which cancels cross terms against any map
    whose amplitudes are symmetric in j (useful when differencing against
    the midpoint-grid Bessel maps built above).
    """
    w = np.asarray(weights, dtype=float)
    K = w.shape[0]
    d = space.length
    if K < 2 * d:
        raise ValueError(f"need at least {2 * d} nodes to cover dimension {d}, got {K}")
    axis = np.empty(K, dtype=int)
    sign = np.ones(K)
    if mirrored_signs:
        half = K // 2
        for p in range(half):
            axis[p] = p % d
            axis[K - 1 - p] = p % d
            sign[K - 1 - p] = -1.0
        if K % 2 == 1:
            axis[half] = half % d
    else:
        axis[:] = np.arange(K) % d
    mass = np.zeros(d)
    np.add.at(mass, axis, w)
    if np.any(mass <= 0):
        raise ValueError("every axis needs positive total mass")
    stack = np.zeros((K, d), dtype=np.complex128)
    stack[np.arange(K), axis] = sign / np.sqrt(mass[axis] * space.dx)
    if nodes is None:
        nodes = tuple(range(K))
    return DiscretizedFrame(space, tuple(nodes), w, stack)


def build_difference_demo(L: float, K: int, dim: int, bessel_bound: float):
    """End-to-end difference-frame construction used by the CLI and the
    verification suite: a rank-one Bessel map rescaled to a target upper
    bound, a Parseval comparand on the same nodes and weights, and their
    difference.

    Returns (fr_bessel, fr_frame, fr_diff).
    """
    if bessel_bound <= 0:
        raise ValueError(f"target Bessel bound must be positive, got {bessel_bound}")
    space = SpaceDescriptor.coordinate(dim)
    h = Vec(space, np.eye(dim, dtype=np.complex128)[0])
    raw = unbounded_bessel(h, L, K)
    raw_B = frame_bounds(raw).B
    scale = np.sqrt(bessel_bound / raw_B)
    fr_bessel = DiscretizedFrame(space, raw.nodes, raw.weights.copy(), scale * raw.stack)
    fr_frame = parseval_comparand(raw.weights, space, nodes=raw.nodes, mirrored_signs=True)
    fr_diff = unbounded_frame(fr_bessel, fr_frame)
    return fr_bessel, fr_frame, fr_diff
