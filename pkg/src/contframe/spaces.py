"""Concrete inner-product spaces: coordinate vectors and sampled functions.

Every function-space computation in this package runs on a uniform grid
x_j = xmin + j*dx, j = 0..count-1, with the left-endpoint Riemann sum as
inner product.  That choice composes exactly with cell-mass quadrature
weights elsewhere and keeps the grid Plancherel identity exact.

Fourier convention (fixed package-wide, documented here on purpose):

    fhat(gamma) = integral f(x) * exp(-2*pi*i*x*gamma) dx

Under this convention exp(-pi t^2) is its own transform.  Admissibility
constants and short-time transform values depend on the convention, so it
must not be changed in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import LengthMismatchError, SpaceMismatchError, WrongSpaceKindError


@dataclass(frozen=True)
class SpaceDescriptor:
    """A finite coordinate space C^dim or a sampled-function space on [xmin, xmax).

    Use the `coordinate` / `sampled` constructors rather than calling the
    dataclass directly.
    """

    kind: str
    dim: int = 0
    xmin: float = 0.0
    xmax: float = 0.0
    count: int = 0

    @staticmethod
    def coordinate(dim: int) -> "SpaceDescriptor":
        if dim < 1:
            raise ValueError(f"coordinate dimension must be >= 1, got {dim}")
        return SpaceDescriptor(kind="coordinate", dim=int(dim))

    @staticmethod
    def sampled(xmin: float, xmax: float, count: int) -> "SpaceDescriptor":
        if count < 2:
            raise ValueError(f"sampled count must be >= 2, got {count}")
        if not xmax > xmin:
            raise ValueError(f"need xmax > xmin, got [{xmin}, {xmax}]")
        return SpaceDescriptor(kind="sampled", xmin=float(xmin), xmax=float(xmax), count=int(count))

    @property
    def length(self) -> int:
        return self.dim if self.kind == "coordinate" else self.count

    @property
    def dx(self) -> float:
        """Grid step for sampled spaces; 1.0 for coordinate spaces (counting measure)."""
        if self.kind == "coordinate":
            return 1.0
        return (self.xmax - self.xmin) / self.count

    def grid(self) -> np.ndarray:
        """Sample points x_j = xmin + j*dx (left endpoints; xmax excluded)."""
        if self.kind != "sampled":
            raise WrongSpaceKindError("coordinate spaces have no sample grid")
        return self.xmin + self.dx * np.arange(self.count)


@dataclass(frozen=True)
class Vec:
    """An element of a SpaceDescriptor space; entries stored as complex128."""

    space: SpaceDescriptor
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.complex128)
        if arr.ndim != 1 or arr.shape[0] != self.space.length:
            raise LengthMismatchError(
                f"entry count {arr.shape} does not match space length {self.space.length}"
            )
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("entries must be finite (no NaN/Inf)")
        object.__setattr__(self, "entries", arr)

    def __add__(self, other: "Vec") -> "Vec":
        require_same_space(self, other)
        return Vec(self.space, self.entries + other.entries)

    def __sub__(self, other: "Vec") -> "Vec":
        require_same_space(self, other)
        return Vec(self.space, self.entries - other.entries)

    def __mul__(self, scalar) -> "Vec":
        return Vec(self.space, self.entries * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "Vec":
        return Vec(self.space, -self.entries)


def require_same_space(u: Vec, v: Vec) -> None:
    if u.space != v.space:
        raise SpaceMismatchError(f"vectors live in different spaces: {u.space} vs {v.space}")


def inner(u: Vec, v: Vec) -> complex:
    """Inner product <u, v>, conjugate-linear in the second argument.

    Coordinate spaces use the plain dot product; sampled spaces use the
    left-endpoint Riemann sum sum_j u(x_j)*conj(v(x_j))*dx.
    """
    require_same_space(u, v)
    # np.vdot conjugates its first argument, so the arguments swap places.
    return complex(np.vdot(v.entries, u.entries) * u.space.dx)


def norm(u: Vec) -> float:
    return float(np.sqrt(max(np.vdot(u.entries, u.entries).real * u.space.dx, 0.0)))


def zero_vec(space: SpaceDescriptor) -> Vec:
    return Vec(space, np.zeros(space.length, dtype=np.complex128))


def basis_vector(space: SpaceDescriptor, i: int) -> Vec:
    """Standard basis vector e_i (0-based) of a coordinate space."""
    if space.kind != "coordinate":
        raise WrongSpaceKindError("basis_vector requires a coordinate space")
    if not 0 <= i < space.dim:
        raise ValueError(f"basis index {i} out of range for dim {space.dim}")
    e = np.zeros(space.dim, dtype=np.complex128)
    e[i] = 1.0
    return Vec(space, e)


def sample_function(space: SpaceDescriptor, fn) -> Vec:
    """Vec whose entries are fn evaluated on the space's grid (vectorized call)."""
    return Vec(space, np.asarray(fn(space.grid()), dtype=np.complex128))


def frequency_space(space: SpaceDescriptor) -> SpaceDescriptor:
    """Frequency-side grid of `dft`: step dgamma = 1/(count*dx), centered at 0.

    gamma_k = (k - count//2) * dgamma, so the gamma = 0 bin is at index count//2.
    """
    if space.kind != "sampled":
        raise WrongSpaceKindError("frequency_space requires a sampled space")
    n = space.count
    dgamma = 1.0 / (n * space.dx)
    gmin = -(n // 2) * dgamma
    return SpaceDescriptor.sampled(gmin, gmin + n * dgamma, n)


def dft(f: Vec) -> Vec:
    """Grid Fourier transform fhat(gamma_k) = dx * sum_j f(x_j) exp(-2 pi i x_j gamma_k).

    Unitary with respect to the grid measures: sum |fhat|^2 dgamma equals
    sum |f|^2 dx exactly (up to rounding).

    Returns a Vec on frequency_space(f.space).
    """
    if f.space.kind != "sampled":
        raise WrongSpaceKindError("dft requires a sampled-space vector")
    n = f.space.count
    fspace = frequency_space(f.space)
    gamma = fspace.grid()
    # x_j*gamma_k splits into xmin*gamma_k (phase below) + j*(k - n//2)/n (FFT index).
    spectrum = np.roll(np.fft.fft(f.entries), n // 2)
    values = f.space.dx * np.exp(-2j * np.pi * f.space.xmin * gamma) * spectrum
    return Vec(fspace, values)


def idft(fhat: Vec, space: SpaceDescriptor | None = None) -> Vec:
    """Inverse of `dft`.

    The frequency grid does not determine the original xmin, so the target
    space may be passed explicitly; by default a symmetric grid centered at 0
    with matching step is assumed.
    """
    if fhat.space.kind != "sampled":
        raise WrongSpaceKindError("idft requires a sampled-space vector")
    n = fhat.space.count
    dgamma = fhat.space.dx
    dx = 1.0 / (n * dgamma)
    if space is None:
        xmin = -(n // 2) * dx
        space = SpaceDescriptor.sampled(xmin, xmin + n * dx, n)
    else:
        if space.kind != "sampled" or space.count != n:
            raise SpaceMismatchError("target space does not match the frequency grid size")
        if abs(space.dx - dx) > 1e-12 * abs(dx):
            raise SpaceMismatchError(
                f"target space step {space.dx} incompatible with frequency step {dgamma}"
            )
    gamma = fhat.space.grid()
    h = fhat.entries * np.exp(2j * np.pi * space.xmin * gamma) / space.dx
    entries = np.fft.ifft(np.roll(h, -(n // 2)))
    return Vec(space, entries)
