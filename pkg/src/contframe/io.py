"""File formats: signal CSV (x,re,im), field CSVs, frame JSON, and
canonical JSON reports.

All writers are deterministic: fixed row order, shortest round-trip float
formatting, sorted JSON keys, and no clocks or environment echoes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .fields import CoefficientField
from .frames import DiscretizedFrame, FrameReport
from .gabor import TimeFreqGrid
from .spaces import SpaceDescriptor, Vec
from .wavelet import ScaleShiftGrid


def _fmt(v: float) -> str:
    return repr(float(v))


def write_signal(vec: Vec, path) -> None:
    if vec.space.kind != "sampled":
        raise ValueError("only sampled vectors can be written as signal CSV")
    x = vec.space.grid()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "re", "im"])
        for xi, v in zip(x, vec.entries):
            w.writerow([_fmt(xi), _fmt(v.real), _fmt(v.imag)])


def read_signal(path) -> Vec:
    """Signal CSV -> Vec; the x column must be strictly increasing and uniform."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:3]] != ["x", "re", "im"]:
            raise ValueError(f"{path}: expected header x,re,im, got {header}")
        rows = [(float(r[0]), float(r[1]), float(r[2])) for r in reader if r]
    if len(rows) < 2:
        raise ValueError(f"{path}: need at least 2 samples")
    x = np.array([r[0] for r in rows])
    steps = np.diff(x)
    dx = float(steps[0])
    if dx <= 0 or np.any(steps <= 0):
        raise ValueError(f"{path}: x must be strictly increasing")
    if not np.allclose(steps, dx, rtol=1e-9, atol=1e-12 * abs(dx)):
        raise ValueError(f"{path}: x must be uniformly spaced")
    n = x.shape[0]
    space = SpaceDescriptor.sampled(float(x[0]), float(x[0]) + n * dx, n)
    entries = np.array([complex(r[1], r[2]) for r in rows])
    return Vec(space, entries)


def write_scale_shift_field(field: CoefficientField, path) -> None:
    """CWT field CSV with columns a,b,re,im (scale-major row order)."""
    grid = field.grid
    if not isinstance(grid, ScaleShiftGrid):
        raise ValueError("field does not carry a scale-shift grid")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["a", "b", "re", "im"])
        for i, a in enumerate(grid.scales):
            for l, b in enumerate(grid.shifts):
                v = field.values[i, l]
                w.writerow([_fmt(a), _fmt(b), _fmt(v.real), _fmt(v.imag)])


def write_time_freq_field(field: CoefficientField, path) -> None:
    """Windowed-transform field CSV with columns y,gamma,re,im (shift-major)."""
    grid = field.grid
    if not isinstance(grid, TimeFreqGrid):
        raise ValueError("field does not carry a time-frequency grid")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["y", "gamma", "re", "im"])
        for l, y in enumerate(grid.shifts):
            for m, g in enumerate(grid.freqs):
                v = field.values[m, l]
                w.writerow([_fmt(y), _fmt(g), _fmt(v.real), _fmt(v.imag)])


def space_to_json(space: SpaceDescriptor) -> dict:
    if space.kind == "coordinate":
        return {"kind": "coordinate", "dim": space.dim}
    return {"kind": "sampled", "xmin": space.xmin, "xmax": space.xmax, "count": space.count}


def space_from_json(obj: dict) -> SpaceDescriptor:
    if obj.get("kind") == "coordinate":
        return SpaceDescriptor.coordinate(int(obj["dim"]))
    if obj.get("kind") == "sampled":
        return SpaceDescriptor.sampled(float(obj["xmin"]), float(obj["xmax"]), int(obj["count"]))
    raise ValueError(f"unknown space kind {obj.get('kind')!r}")


def frame_to_json(fr: DiscretizedFrame) -> dict:
    return {
        "frame": {
            "space": space_to_json(fr.space),
            "nodes": [n if isinstance(n, int) else float(n) for n in fr.nodes],
            "weights": [float(w) for w in fr.weights],
            "vectors": [[[float(z.real), float(z.imag)] for z in row] for row in fr.stack],
        }
    }


def frame_from_json(obj: dict) -> DiscretizedFrame:
    body = obj["frame"]
    space = space_from_json(body["space"])
    stack = np.array(
        [[complex(re, im) for re, im in row] for row in body["vectors"]], dtype=np.complex128
    )
    if stack.ndim == 1:  # zero nodes edge
        stack = stack.reshape(0, space.length)
    return DiscretizedFrame(space, tuple(body["nodes"]), np.asarray(body["weights"], float), stack)


def report_to_json(rep: FrameReport) -> dict:
    return rep.to_json_dict()


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_json(obj, path) -> None:
    Path(path).write_text(canonical_json(obj))


def read_json(path) -> dict:
    return json.loads(Path(path).read_text())
