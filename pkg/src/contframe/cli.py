"""Batch front end.

Every run writes a canonical JSON report (tool version, effective
tolerances, certified numbers).  Exit codes: 0 success, 1 input error,
2 verification failure.  The CONTFRAME_THREADS environment variable caps
intra-job parallelism.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

import click
import numpy as np

from . import __version__, io
from .construct import (
    DiscreteSystem,
    bessel_only_map,
    build_difference_demo,
    step_frame,
    unbounded_bessel,
)
from .errors import ContframeError, NotAdmissibleError
from .frames import FRAME_TOL_FACTOR, PARSEVAL_TOL, dual_reconstruct, frame_bounds
from .gabor import WindowSpec, gaussian_window, stft, time_freq_grid
from .measure import make_partition
from .spaces import SpaceDescriptor, Vec, norm
from .verify import run_suite
from .wavelet import (
    WaveletSpec,
    admissibility,
    cwt,
    mexican_hat,
    morlet,
    scale_shift_grid,
    tight_energy_ratio,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2


@dataclass
class JobSpec:
    command: str
    inputs: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)


def _report_skeleton(job: JobSpec) -> dict:
    return {
        "command": job.command,
        "params": dict(sorted(job.params.items())),
        "tool": {"name": "contframe", "version": __version__},
    }


def _write_report(report: dict, path) -> None:
    if path:
        io.write_json(report, path)


def _check_inputs_exist(job: JobSpec) -> None:
    for name, p in job.inputs.items():
        if p and not Path(p).exists():
            raise FileNotFoundError(f"input {name!r} not found: {p}")


def run(job: JobSpec) -> int:
    """Execute a job, write its report, and return the exit code."""
    handlers = {
        "construct": _run_construct,
        "bounds": _run_bounds,
        "reconstruct": _run_reconstruct,
        "cwt": _run_cwt,
        "stft": _run_stft,
        "verify": _run_verify,
    }
    handler = handlers.get(job.command)
    report = _report_skeleton(job)
    report_path = job.params.get("report")
    if handler is None:
        report["error"] = f"unknown command {job.command!r}"
        _write_report(report, report_path)
        return EXIT_INPUT
    try:
        _check_inputs_exist(job)
        code = handler(job, report)
    except (ContframeError, FileNotFoundError, ValueError, KeyError) as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        _write_report(report, report_path)
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    _write_report(report, report_path)
    return code


def _load_system(path) -> DiscreteSystem:
    obj = io.read_json(path)
    body = obj["system"]
    space = io.space_from_json(body["space"])
    vectors = tuple(
        Vec(space, np.array([complex(re, im) for re, im in row])) for row in body["vectors"]
    )
    return DiscreteSystem(vectors)


def _run_construct(job: JobSpec, report: dict) -> int:
    p = job.params
    kind = p["kind"]
    seed = int(p.get("seed", 0))
    rng = np.random.default_rng(seed)
    if kind == "parseval":
        dim = int(p["dim"])
        cells = int(p.get("cells", dim))
        if cells != dim:
            raise ValueError(f"a Parseval step frame needs cells == dim, got {cells} != {dim}")
        weights = p.get("weights") or rng.uniform(0.5, 2.0, cells).tolist()
        space = SpaceDescriptor.coordinate(dim)
        eye = np.eye(dim, dtype=np.complex128)
        sys = DiscreteSystem(tuple(Vec(space, eye[i]) for i in range(dim)))
        fr = step_frame(make_partition(weights), sys)
    elif kind == "step":
        sys = _load_system(job.inputs["system"])
        weights = p["weights"]
        fr = step_frame(make_partition(weights), sys)
    elif kind == "bessel_only":
        dim = int(p["dim"])
        cells = int(p["cells"])
        space = SpaceDescriptor.coordinate(dim)
        vecs = []
        for _ in range(cells):
            z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            z /= np.linalg.norm(z)
            vecs.append(Vec(space, z))
        weights = p.get("weights") or rng.uniform(0.5, 2.0, cells).tolist()
        fr = bessel_only_map(make_partition(weights), DiscreteSystem(tuple(vecs)))
    elif kind == "ex28":
        dim = int(p.get("dim", 2))
        h = Vec(SpaceDescriptor.coordinate(dim), np.eye(dim, dtype=np.complex128)[0])
        fr = unbounded_bessel(h, float(p["half_width"]), int(p["nodes"]))
    elif kind == "ex29":
        _, _, fr = build_difference_demo(
            L=float(p["half_width"]),
            K=int(p["nodes"]),
            dim=int(p.get("dim", 2)),
            bessel_bound=float(p.get("b1", 0.01)),
        )
    else:
        raise ValueError(f"unknown construct kind {kind!r}")
    rep = frame_bounds(fr)
    report["results"] = {"report": rep.to_json_dict(), "nodes": len(fr)}
    report["tolerances"] = {"frame_tol_factor": FRAME_TOL_FACTOR, "parseval_tol": PARSEVAL_TOL}
    out = p.get("out")
    if out:
        io.write_json(io.frame_to_json(fr), out)
    expect = p.get("expect")
    if expect and not _verdict_matches(rep, expect):
        report["results"]["expect"] = expect
        return EXIT_VERIFY
    return EXIT_OK


def _verdict_matches(rep, expect: str) -> bool:
    expect = expect.lower()
    if expect == "parseval":
        return rep.parseval
    return rep.verdict.lower() == expect.replace("_", "")


def _run_bounds(job: JobSpec, report: dict) -> int:
    fr = io.frame_from_json(io.read_json(job.inputs["frame"]))
    rep = frame_bounds(fr)
    report["results"] = {"report": rep.to_json_dict()}
    report["tolerances"] = {"frame_tol_factor": FRAME_TOL_FACTOR, "parseval_tol": PARSEVAL_TOL}
    expect = job.params.get("expect")
    if expect and not _verdict_matches(rep, expect):
        report["results"]["expect"] = expect
        return EXIT_VERIFY
    return EXIT_OK


def _run_reconstruct(job: JobSpec, report: dict) -> int:
    fr = io.frame_from_json(io.read_json(job.inputs["frame"]))
    tol = float(job.params.get("tol", 1e-8))
    vec_path = job.inputs.get("vector")
    if vec_path:
        obj = io.read_json(vec_path)
        f = Vec(fr.space, np.array([complex(re, im) for re, im in obj["vector"]]))
    else:
        rng = np.random.default_rng(int(job.params.get("seed", 0)))
        f = Vec(fr.space, rng.standard_normal(fr.space.length)
                + 1j * rng.standard_normal(fr.space.length))
    report["tolerances"] = {"tol_recon": tol}
    from .errors import NotAFrameError, SolverDivergedError

    try:
        _, residual = dual_reconstruct(fr, f, tol_recon=tol)
    except (NotAFrameError, SolverDivergedError) as exc:
        report["results"] = {"error": f"{type(exc).__name__}: {exc}"}
        return EXIT_VERIFY
    report["results"] = {"residual": residual}
    return EXIT_OK


def _load_wavelet(name_or_path, space, center_freq):
    if name_or_path == "mexican_hat":
        return mexican_hat(space)
    if name_or_path == "morlet":
        return morlet(space, center_freq=center_freq)
    return io.read_signal(name_or_path)


def _run_cwt(job: JobSpec, report: dict) -> int:
    p = job.params
    f = io.read_signal(job.inputs["signal"])
    psi = _load_wavelet(p.get("wavelet", "mexican_hat"), f.space, float(p.get("center_freq", 2.5)))
    try:
        C = admissibility(psi)
    except NotAdmissibleError as exc:
        report["results"] = {"error": f"NotAdmissible: {exc}"}
        return EXIT_VERIFY
    w = WaveletSpec(psi, C)
    grid = scale_shift_grid(
        f.space,
        float(p["amin"]),
        float(p["amax"]),
        voices_per_octave=int(p.get("voices", 16)),
        mirror=bool(p.get("mirror", False)),
    )
    field = cwt(f, w, grid)
    ratio = tight_energy_ratio(field, C, f)
    out = p.get("out")
    if out:
        io.write_scale_shift_field(field, out)
    report["tolerances"] = {"dc_tol": 1e-6, "refinement_tol": 0.01}
    report["results"] = {
        "C_psi": C,
        "energy_ratio": ratio,
        "scales": int(grid.scales.shape[0]),
        "shifts": int(grid.shifts.shape[0]),
    }
    return EXIT_OK


def _run_stft(job: JobSpec, report: dict) -> int:
    p = job.params
    f = io.read_signal(job.inputs["signal"])
    wname = p.get("window", "gauss")
    if wname == "gauss":
        win = gaussian_window(f.space)
    else:
        win = WindowSpec(io.read_signal(wname))
    grid = time_freq_grid(
        f.space,
        float(p["ymin"]), float(p["ymax"]), float(p["dy"]),
        float(p["gmin"]), float(p["gmax"]), float(p["dg"]),
    )
    field = stft(f, win, grid)
    energy = grid.cell_weight * float(np.sum(np.abs(field.values) ** 2))
    identity = energy / (win.norm_sq * norm(f) ** 2) if norm(f) > 0 else 0.0
    out = p.get("out")
    if out:
        io.write_time_freq_field(field, out)
    report["tolerances"] = {"lattice_tol": 1e-9}
    report["results"] = {
        "window_norm_sq": win.norm_sq,
        "energy_identity_ratio": identity,
        "freqs": int(grid.freqs.shape[0]),
        "shifts": int(grid.shifts.shape[0]),
    }
    return EXIT_OK


def _run_verify(job: JobSpec, report: dict) -> int:
    scale = job.params.get("scale", "small")
    suite = run_suite(scale)
    report["results"] = suite
    return EXIT_OK if suite["suite"]["all_passed"] else EXIT_VERIFY


@click.group()
@click.version_option(version=__version__, prog_name="contframe")
def main():
    """Frame constructions, bound certification, and verified time-frequency transforms."""


@main.command("construct")
@click.option("--kind", type=click.Choice(["parseval", "step", "bessel_only", "ex28", "ex29"]),
              required=True)
@click.option("--dim", type=int, default=None)
@click.option("--cells", type=int, default=None)
@click.option("--weights", type=str, default=None, help="comma-separated cell weights")
@click.option("--system", "system_path", type=str, default=None,
              help="JSON file with {'system': {'space':..., 'vectors':...}}")
@click.option("--half-width", type=float, default=10.0, help="domain half-width for ex28/ex29")
@click.option("--nodes", type=int, default=2000, help="node count for ex28/ex29")
@click.option("--b1", type=float, default=0.01, help="target Bessel bound for ex29")
@click.option("--seed", type=int, default=0)
@click.option("--expect", type=click.Choice(["frame", "besselonly", "bessel_only", "invalid",
                                             "parseval"]), default=None)
@click.option("--out", type=str, default=None, help="write the frame as JSON")
@click.option("--report", type=str, default="contframe_report.json")
def construct_cmd(kind, dim, cells, weights, system_path, half_width, nodes, b1, seed, expect,
                  out, report):
    """Build a frame and certify its bounds."""
    params = {"kind": kind, "seed": seed, "half_width": half_width, "nodes": nodes, "b1": b1,
              "report": report}
    if dim is not None:
        params["dim"] = dim
    if cells is not None:
        params["cells"] = cells
    if weights:
        params["weights"] = [float(w) for w in weights.split(",")]
    if expect:
        params["expect"] = expect
    if out:
        params["out"] = out
    inputs = {}
    if system_path:
        inputs["system"] = system_path
    sys.exit(run(JobSpec("construct", inputs, params)))


@main.command("bounds")
@click.option("--frame", "frame_path", type=str, required=True)
@click.option("--expect", type=click.Choice(["frame", "besselonly", "bessel_only", "invalid",
                                             "parseval"]), default=None)
@click.option("--report", type=str, default="contframe_report.json")
def bounds_cmd(frame_path, expect, report):
    """Certify frame bounds from a frame JSON file."""
    params = {"report": report}
    if expect:
        params["expect"] = expect
    sys.exit(run(JobSpec("bounds", {"frame": frame_path}, params)))


@main.command("reconstruct")
@click.option("--frame", "frame_path", type=str, required=True)
@click.option("--vector", "vector_path", type=str, default=None,
              help="JSON file with {'vector': [[re,im],...]}; random when omitted")
@click.option("--tol", type=float, default=1e-8)
@click.option("--seed", type=int, default=0)
@click.option("--report", type=str, default="contframe_report.json")
def reconstruct_cmd(frame_path, vector_path, tol, seed, report):
    """Reconstruct a vector through the canonical dual and report the residual."""
    inputs = {"frame": frame_path}
    if vector_path:
        inputs["vector"] = vector_path
    sys.exit(run(JobSpec("reconstruct", inputs, {"tol": tol, "seed": seed, "report": report})))


@main.command("cwt")
@click.option("--wavelet", type=str, default="mexican_hat",
              help="mexican_hat, morlet, or a signal CSV path")
@click.option("--amin", type=float, required=True)
@click.option("--amax", type=float, required=True)
@click.option("--voices", type=int, default=16)
@click.option("--mirror", is_flag=True, default=False)
@click.option("--center-freq", type=float, default=2.5)
@click.option("--signal", "signal_path", type=str, required=True)
@click.option("--out", type=str, required=True, help="field CSV (a,b,re,im)")
@click.option("--report", type=str, default="contframe_report.json")
def cwt_cmd(wavelet, amin, amax, voices, mirror, center_freq, signal_path, out, report):
    """Scale-shift transform of a signal CSV."""
    params = {"wavelet": wavelet, "amin": amin, "amax": amax, "voices": voices,
              "mirror": mirror, "center_freq": center_freq, "out": out, "report": report}
    inputs = {"signal": signal_path}
    if wavelet not in ("mexican_hat", "morlet"):
        inputs["wavelet"] = wavelet
    sys.exit(run(JobSpec("cwt", inputs, params)))


@main.command("stft")
@click.option("--window", type=str, default="gauss", help="gauss or a signal CSV path")
@click.option("--ymin", type=float, required=True)
@click.option("--ymax", type=float, required=True)
@click.option("--dy", type=float, required=True)
@click.option("--gmin", type=float, required=True)
@click.option("--gmax", type=float, required=True)
@click.option("--dg", type=float, required=True)
@click.option("--signal", "signal_path", type=str, required=True)
@click.option("--out", type=str, required=True, help="field CSV (y,gamma,re,im)")
@click.option("--report", type=str, default="contframe_report.json")
def stft_cmd(window, ymin, ymax, dy, gmin, gmax, dg, signal_path, out, report):
    """Windowed time-frequency transform of a signal CSV."""
    params = {"window": window, "ymin": ymin, "ymax": ymax, "dy": dy,
              "gmin": gmin, "gmax": gmax, "dg": dg, "out": out, "report": report}
    inputs = {"signal": signal_path}
    if window != "gauss":
        inputs["window"] = window
    sys.exit(run(JobSpec("stft", inputs, params)))


@main.command("verify")
@click.option("--scale", type=click.Choice(["small", "full"]), default="small")
@click.option("--report", type=str, default="contframe_report.json")
def verify_cmd(scale, report):
    """Run the verification suite (one entry per acceptance check)."""
    sys.exit(run(JobSpec("verify", {}, {"scale": scale, "report": report})))


if __name__ == "__main__":
    main()
