import numpy as np
import pytest

from contframe import io
from contframe.spaces import SpaceDescriptor, Vec, sample_function
from contframe.frames import DiscretizedFrame, frame_bounds
from contframe.gabor import gaussian_window, stft, time_freq_grid
from contframe.wavelet import WaveletSpec, cwt, mexican_hat, scale_shift_grid

SP = SpaceDescriptor.sampled(-4.0, 4.0, 128)


def test_signal_round_trip(tmp_path):
    f = sample_function(SP, lambda t: np.exp(-t**2) + 1j * np.sin(t))
    p = tmp_path / "sig.csv"
    io.write_signal(f, p)
    back = io.read_signal(p)
    assert back.space == SP
    assert np.array_equal(back.entries, f.entries)  # repr floats round-trip exactly


def test_signal_header_and_spacing_checks(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("a,b,c\n0,1,0\n1,1,0\n")
    with pytest.raises(ValueError):
        io.read_signal(p)
    p.write_text("x,re,im\n0,1,0\n")
    with pytest.raises(ValueError):
        io.read_signal(p)
    p.write_text("x,re,im\n0,1,0\n1,1,0\n1.5,1,0\n")
    with pytest.raises(ValueError):
        io.read_signal(p)
    p.write_text("x,re,im\n0,1,0\n-1,1,0\n-2,1,0\n")
    with pytest.raises(ValueError):
        io.read_signal(p)


def test_coordinate_vector_not_a_signal(tmp_path):
    v = Vec(SpaceDescriptor.coordinate(3), np.ones(3))
    with pytest.raises(ValueError):
        io.write_signal(v, tmp_path / "no.csv")


def test_scale_shift_field_csv(tmp_path):
    f = sample_function(SP, lambda t: np.exp(-t**2))
    w = WaveletSpec(mexican_hat(SP))
    grid = scale_shift_grid(SP, 0.5, 2.0, 4)
    field = cwt(f, w, grid)
    p = tmp_path / "field.csv"
    io.write_scale_shift_field(field, p)
    lines = p.read_text().strip().split("\n")
    assert lines[0] == "a,b,re,im"
    assert len(lines) == 1 + grid.scales.shape[0] * grid.shifts.shape[0]
    # scale-major: first block shares the smallest scale
    first = lines[1].split(",")
    assert float(first[0]) == grid.scales[0]
    assert float(first[1]) == grid.shifts[0]


def test_time_freq_field_csv(tmp_path):
    f = sample_function(SP, lambda t: np.exp(-np.pi * t**2))
    grid = time_freq_grid(SP, -1.0, 1.0, 0.5, -1.0, 1.0, 0.5)
    field = stft(f, gaussian_window(SP), grid)
    p = tmp_path / "tf.csv"
    io.write_time_freq_field(field, p)
    lines = p.read_text().strip().split("\n")
    assert lines[0] == "y,gamma,re,im"
    assert len(lines) == 1 + grid.freqs.shape[0] * grid.shifts.shape[0]
    # shift-major ordering
    row1 = lines[1].split(",")
    row2 = lines[2].split(",")
    assert float(row1[0]) == float(row2[0]) == grid.shifts[0]
    assert float(row2[1]) > float(row1[1])


def test_field_writer_grid_type_checks(tmp_path):
    f = sample_function(SP, lambda t: np.exp(-np.pi * t**2))
    grid = time_freq_grid(SP, -1.0, 1.0, 0.5, -1.0, 1.0, 0.5)
    field = stft(f, gaussian_window(SP), grid)
    with pytest.raises(ValueError):
        io.write_scale_shift_field(field, tmp_path / "x.csv")
    wgrid = scale_shift_grid(SP, 0.5, 2.0, 4)
    wfield = cwt(f, WaveletSpec(mexican_hat(SP)), wgrid)
    with pytest.raises(ValueError):
        io.write_time_freq_field(wfield, tmp_path / "y.csv")


def test_space_json_round_trip():
    for sp in (SpaceDescriptor.coordinate(7), SP):
        assert io.space_from_json(io.space_to_json(sp)) == sp
    with pytest.raises(ValueError):
        io.space_from_json({"kind": "mystery"})


def test_frame_json_round_trip():
    rng = np.random.default_rng(50)
    sp = SpaceDescriptor.coordinate(3)
    stack = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    fr = DiscretizedFrame(sp, tuple(range(5)), rng.uniform(0.5, 2.0, 5), stack)
    back = io.frame_from_json(io.frame_to_json(fr))
    assert back.space == fr.space
    assert back.nodes == fr.nodes
    assert np.array_equal(back.weights, fr.weights)
    assert np.array_equal(back.stack, fr.stack)
    r1, r2 = frame_bounds(fr), frame_bounds(back)
    assert r1.A == r2.A and r1.B == r2.B


def test_canonical_json_is_sorted_and_stable(tmp_path):
    obj = {"b": 1.0, "a": [3, 2], "c": {"z": True, "y": None}}
    s1 = io.canonical_json(obj)
    s2 = io.canonical_json({"c": {"y": None, "z": True}, "a": [3, 2], "b": 1.0})
    assert s1 == s2
    assert s1.index('"a"') < s1.index('"b"') < s1.index('"c"')
    p = tmp_path / "r.json"
    io.write_json(obj, p)
    assert io.read_json(p) == obj
    assert p.read_text() == s1
