import numpy as np
import pytest

from contframe.spaces import (
    SpaceDescriptor,
    Vec,
    basis_vector,
    dft,
    frequency_space,
    idft,
    inner,
    norm,
    require_same_space,
    sample_function,
    zero_vec,
)
from contframe.errors import LengthMismatchError, SpaceMismatchError, WrongSpaceKindError


def test_coordinate_descriptor():
    sp = SpaceDescriptor.coordinate(5)
    assert sp.kind == "coordinate"
    assert sp.length == 5
    assert sp.dx == 1.0


def test_sampled_descriptor_grid():
    sp = SpaceDescriptor.sampled(-8.0, 8.0, 4096)
    g = sp.grid()
    assert g.shape == (4096,)
    assert g[0] == -8.0
    assert abs(sp.dx - 16.0 / 4096) < 1e-15
    # half-open interval: right endpoint excluded
    assert abs(g[-1] - (8.0 - sp.dx)) < 1e-12


def test_sampled_rejects_bad_ranges():
    with pytest.raises(ValueError):
        SpaceDescriptor.sampled(1.0, 1.0, 16)
    with pytest.raises(ValueError):
        SpaceDescriptor.sampled(0.0, 1.0, 1)


def test_vec_algebra():
    sp = SpaceDescriptor.coordinate(3)
    u = Vec(sp, np.array([1.0, 2.0, 3.0]))
    v = Vec(sp, np.array([1j, 0.0, -1.0]))
    w = u + 2.0 * v - v
    assert np.allclose(w.entries, [1 + 1j, 2.0, 2.0])


def test_vec_rejects_nonfinite():
    sp = SpaceDescriptor.coordinate(2)
    with pytest.raises(ValueError):
        Vec(sp, np.array([1.0, np.nan]))
    with pytest.raises(ValueError):
        Vec(sp, np.array([np.inf + 0j, 0.0]))


def test_vec_length_mismatch():
    sp = SpaceDescriptor.coordinate(3)
    with pytest.raises(LengthMismatchError):
        Vec(sp, np.zeros(4))


def test_mixed_space_arithmetic_rejected():
    u = Vec(SpaceDescriptor.coordinate(2), np.ones(2))
    v = Vec(SpaceDescriptor.coordinate(3), np.ones(3))
    with pytest.raises(SpaceMismatchError):
        _ = u + v
    with pytest.raises(SpaceMismatchError):
        require_same_space(u, v)


def test_gaussian_inner_product():
    """<g, g> for g(t) = exp(-pi t^2) equals 2^(-1/2)."""
    sp = SpaceDescriptor.sampled(-8.0, 8.0, 4096)
    g = sample_function(sp, lambda t: np.exp(-np.pi * t**2))
    assert abs(inner(g, g) - 2.0**-0.5) < 1e-6


def test_inner_sesquilinearity():
    rng = np.random.default_rng(0)
    sp = SpaceDescriptor.coordinate(6)
    u = Vec(sp, rng.standard_normal(6) + 1j * rng.standard_normal(6))
    v = Vec(sp, rng.standard_normal(6) + 1j * rng.standard_normal(6))
    a, b = 0.7 - 0.2j, -1.1 + 0.5j
    # linear in the first slot, conjugate-linear in the second
    assert abs(inner(a * u, v) - a * inner(u, v)) < 1e-12
    assert abs(inner(u, b * v) - np.conj(b) * inner(u, v)) < 1e-12
    assert abs(inner(u, v) - np.conj(inner(v, u))) < 1e-12


def test_norm_matches_inner():
    rng = np.random.default_rng(1)
    sp = SpaceDescriptor.sampled(0.0, 1.0, 64)
    u = Vec(sp, rng.standard_normal(64) + 1j * rng.standard_normal(64))
    assert abs(norm(u) ** 2 - inner(u, u).real) < 1e-12


def test_frequency_space_step():
    sp = SpaceDescriptor.sampled(-8.0, 8.0, 256)
    fsp = frequency_space(sp)
    assert abs(fsp.dx - 1.0 / 16.0) < 1e-15
    assert 0.0 in fsp.grid()


def test_dft_gaussian_self_transform():
    """exp(-pi t^2) transforms to itself; checked for |gamma| <= 3."""
    sp = SpaceDescriptor.sampled(-8.0, 8.0, 4096)
    g = sample_function(sp, lambda t: np.exp(-np.pi * t**2))
    ghat = dft(g)
    gam = ghat.space.grid()
    mask = np.abs(gam) <= 3.0
    err = np.max(np.abs(ghat.entries[mask] - np.exp(-np.pi * gam[mask] ** 2)))
    assert err < 1e-6


def test_dft_idft_round_trip():
    rng = np.random.default_rng(2)
    sp = SpaceDescriptor.sampled(-4.0, 4.0, 512)
    f = Vec(sp, rng.standard_normal(512) + 1j * rng.standard_normal(512))
    back = idft(dft(f), sp)
    assert np.max(np.abs(back.entries - f.entries)) < 1e-10
    fhat = dft(f)
    again = dft(idft(fhat, sp))
    assert np.max(np.abs(again.entries - fhat.entries)) < 1e-10


def test_grid_plancherel():
    # discrete Parseval holds exactly for the scaled transform pair
    rng = np.random.default_rng(3)
    sp = SpaceDescriptor.sampled(-2.0, 2.0, 128)
    f = Vec(sp, rng.standard_normal(128) + 1j * rng.standard_normal(128))
    fhat = dft(f)
    assert abs(norm(f) ** 2 - norm(fhat) ** 2) < 1e-12 * norm(f) ** 2


def test_basis_vector():
    sp = SpaceDescriptor.coordinate(4)
    e2 = basis_vector(sp, 2)
    assert np.allclose(e2.entries, [0, 0, 1, 0])
    with pytest.raises(WrongSpaceKindError):
        basis_vector(SpaceDescriptor.sampled(0.0, 1.0, 4), 0)


def test_zero_vec():
    sp = SpaceDescriptor.coordinate(3)
    assert norm(zero_vec(sp)) == 0.0
