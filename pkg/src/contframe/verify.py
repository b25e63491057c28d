"""Machine-checkable verification suite.

Each check function certifies one property of the package, runs
deterministically (seeded randomness, fixed reduction order, no clocks),
and returns a CheckResult whose `measured` dict holds the certified
numbers.  `run_suite` packages one entry per check into a canonical report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import __version__
from .construct import (
    DiscreteSystem,
    bessel_only_map,
    build_difference_demo,
    step_frame,
    unbounded_bessel,
)
from .errors import NotAdmissibleError
from .frames import (
    DiscretizedFrame,
    analysis,
    apply_frame_operator,
    dual_reconstruct,
    frame_bounds,
    frame_operator,
    sigma_finite_support,
    synthesis,
)
from .gabor import WindowSpec, gaussian_window, istft, orthogonality_relation, stft, time_freq_grid
from .measure import make_partition
from .spaces import SpaceDescriptor, Vec, inner, norm, sample_function
from .wavelet import (
    WaveletSpec,
    admissibility,
    cwt,
    icwt,
    mexican_hat,
    scale_shift_grid,
    tight_energy_ratio,
)

BOUND_TOL = 1e-10
RECON_TOL = 1e-12
FACTORIZATION_TOL = 1e-12

# Refinement-study configuration: interval half-width and coarsest node
# count.  The profile's tail beyond [-L, L] costs 2/L of the limit 6, and
# the midpoint sum near 0 lags by about 1.21*sqrt(cell width), so L = 200
# with K0 = 24000 (doubled four times) lands within 1% of 6 while keeping
# +-1 on cell edges at every refinement (K0 divisible by 400), which
# preserves per-cell monotonicity of the midpoint sums.
PROFILE_L = 200.0
PROFILE_K0 = 24000

# Tight-wavelet demo configuration: signal on [-32, 32) with 2048 samples,
# two narrow-band atoms whose spectra sit inside the scale band [0.25, 8].
CWT_XHALF = 32.0
CWT_COUNT = 2048
CWT_A_MIN = 0.25
CWT_A_MAX = 8.0
CWT_VOICES = 16


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: dict

    def to_json_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "measured": self.measured}


def _random_vec(space: SpaceDescriptor, rng) -> Vec:
    z = rng.standard_normal(space.length) + 1j * rng.standard_normal(space.length)
    return Vec(space, z)


def _onb_system(dim: int) -> DiscreteSystem:
    space = SpaceDescriptor.coordinate(dim)
    eye = np.eye(dim, dtype=np.complex128)
    return DiscreteSystem(tuple(Vec(space, eye[i]) for i in range(dim)))


def check_parseval_construction(scale: str = "full") -> CheckResult:
    dims = range(2, 65) if scale == "full" else range(2, 17, 2)
    n_parts = 20 if scale == "full" else 5
    rng = np.random.default_rng(2024)
    max_bound_dev = 0.0
    max_recon = 0.0
    for dim in dims:
        sys = _onb_system(dim)
        for _ in range(n_parts):
            p = make_partition(rng.uniform(0.1, 10.0, dim))
            fr = step_frame(p, sys)
            rep = frame_bounds(fr)
            max_bound_dev = max(max_bound_dev, abs(rep.A - 1.0), abs(rep.B - 1.0))
            f = _random_vec(fr.space, rng)
            rebuilt = synthesis(fr, analysis(fr, f))
            max_recon = max(max_recon, norm(rebuilt - f) / norm(f))
            _, residual = dual_reconstruct(fr, f, tol_recon=RECON_TOL, report=rep)
            max_recon = max(max_recon, residual)
    passed = max_bound_dev <= BOUND_TOL and max_recon <= RECON_TOL
    return CheckResult(
        "parseval_construction",
        bool(passed),
        {
            "dims": [int(min(dims)), int(max(dims))],
            "partitions_per_dim": n_parts,
            "max_bound_deviation": max_bound_dev,
            "max_reconstruction_error": max_recon,
            "bound_tol": BOUND_TOL,
            "recon_tol": RECON_TOL,
        },
    )


def check_bound_transfer(scale: str = "full") -> CheckResult:
    n_frames = 50 if scale == "full" else 10
    rng = np.random.default_rng(7)
    max_dev = 0.0
    for _ in range(n_frames):
        dim = int(rng.integers(2, 33))
        count = dim + int(rng.integers(0, 9))
        space = SpaceDescriptor.coordinate(dim)
        vectors = tuple(_random_vec(space, rng) for _ in range(count))
        sys = DiscreteSystem(vectors)
        p = make_partition(rng.uniform(0.05, 20.0, count))
        rep = frame_bounds(step_frame(p, sys))
        # independent oracle: assemble sum of outer products vector by vector
        M = np.zeros((dim, dim), dtype=np.complex128)
        for v in vectors:
            M += np.outer(v.entries, v.entries.conj())
        eigs = np.linalg.eigvalsh(M)
        max_dev = max(max_dev, abs(rep.A - max(eigs[0], 0.0)), abs(rep.B - eigs[-1]))
    passed = max_dev <= BOUND_TOL
    return CheckResult(
        "bound_transfer",
        bool(passed),
        {"frames": n_frames, "max_bound_deviation": float(max_dev), "bound_tol": BOUND_TOL},
    )


def _sample_frames(rng):
    """A small family of frames reused by the operator-identity checks."""
    frames = []
    sys8 = _onb_system(8)
    frames.append(step_frame(make_partition(rng.uniform(0.2, 5.0, 8)), sys8))
    space = SpaceDescriptor.coordinate(16)
    vecs = tuple(_random_vec(space, rng) for _ in range(24))
    frames.append(step_frame(make_partition(rng.uniform(0.1, 3.0, 24)), DiscreteSystem(vecs)))
    space5 = SpaceDescriptor.coordinate(5)
    tri = [Vec(space5, np.eye(5, dtype=np.complex128)[i]) for i in range(5)]
    tri.append(Vec(space5, np.ones(5, dtype=np.complex128)))
    frames.append(step_frame(make_partition([1, 2, 4, 1, 2, 4]), DiscreteSystem(tuple(tri))))
    return frames


def check_factorization(scale: str = "full") -> CheckResult:
    n_f = 100 if scale == "full" else 20
    rng = np.random.default_rng(99)
    worst = 0.0
    for fr in _sample_frames(rng):
        S = frame_operator(fr)
        for _ in range(n_f):
            f = _random_vec(fr.space, rng)
            via_matrix = S @ f.entries
            via_ops = synthesis(fr, analysis(fr, f)).entries
            worst = max(worst, float(np.linalg.norm(via_matrix - via_ops)) / norm(f))
    passed = worst <= FACTORIZATION_TOL
    return CheckResult(
        "factorization",
        bool(passed),
        {"vectors_per_frame": n_f, "max_gap": worst, "tol": FACTORIZATION_TOL},
    )


def check_support_sets(scale: str = "full") -> CheckResult:
    n_f = 20 if scale == "full" else 5
    rng = np.random.default_rng(5)
    space16 = SpaceDescriptor.coordinate(16)
    bessel = bessel_only_map(
        make_partition(rng.uniform(0.5, 2.0, 4)),
        DiscreteSystem(tuple(_random_vec(space16, rng) for _ in range(4))),
    )
    h = Vec(SpaceDescriptor.coordinate(2), np.array([1.0, 0.5j]))
    maps = [bessel, unbounded_bessel(h, 10.0, 200)] + _sample_frames(rng)
    worst_ratio = 0.0
    nested = True
    for fr in maps:
        B = frame_bounds(fr).B
        for _ in range(n_f):
            f = _random_vec(fr.space, rng)
            nf2 = norm(f) ** 2
            rows = sigma_finite_support(fr, f, 10)
            prev = set()
            for n, nodes, mass in rows:
                bound = n * n * B * nf2
                worst_ratio = max(worst_ratio, mass / bound)
                nodes = set(nodes)
                nested = nested and prev.issubset(nodes)
                prev = nodes
    passed = worst_ratio <= 1.0 + 1e-12 and nested
    return CheckResult(
        "support_sets",
        bool(passed),
        {"signals_per_map": n_f, "max_mass_over_bound": worst_ratio, "nested": bool(nested)},
    )


def check_bessel_only(scale: str = "full") -> CheckResult:
    rng = np.random.default_rng(31)
    space = SpaceDescriptor.coordinate(16)
    vecs = []
    for _ in range(4):
        v = _random_vec(space, rng)
        vecs.append((1.0 / norm(v)) * v)
    sys = DiscreteSystem(tuple(vecs))
    fr = bessel_only_map(make_partition(rng.uniform(0.2, 4.0, 4)), sys)
    rep = frame_bounds(fr)
    M = np.zeros((16, 16), dtype=np.complex128)
    for v in vecs:
        M += np.outer(v.entries, v.entries.conj())
    oracle_B = float(np.linalg.eigvalsh(M)[-1])
    dev = abs(rep.B - oracle_B)
    passed = rep.verdict == "BesselOnly" and dev <= BOUND_TOL
    return CheckResult(
        "bessel_only",
        bool(passed),
        {"verdict": rep.verdict, "B": rep.B, "oracle_B": oracle_B, "deviation": dev},
    )


def check_profile_refinement(scale: str = "full") -> CheckResult:
    h = Vec(SpaceDescriptor.coordinate(2), np.array([1.0, 0.0]))
    target = 6.0 * norm(h) ** 2
    bounds = []
    peaks = []
    K = PROFILE_K0
    for _ in range(5):
        fr = unbounded_bessel(h, PROFILE_L, K)
        bounds.append(frame_bounds(fr).B)
        peaks.append(float(fr.node_norms().max()))
        K *= 2
    monotone = all(b2 >= b1 - 1e-13 for b1, b2 in zip(bounds, bounds[1:]))
    below = all(b <= target * (1 + 1e-12) for b in bounds)
    final_dev = (target - bounds[-1]) / target
    peak_ratio = peaks[-1] / peaks[0]
    passed = monotone and below and final_dev <= 0.01 and peak_ratio >= 2.0 - 1e-9
    return CheckResult(
        "profile_refinement",
        bool(passed),
        {
            "L": PROFILE_L,
            "K0": PROFILE_K0,
            "bounds": bounds,
            "final_relative_deficit": final_dev,
            "peak_norm_ratio_16x": peak_ratio,
            "monotone": bool(monotone),
        },
    )


def check_difference_bounds(scale: str = "full") -> CheckResult:
    _, _, fr_diff = build_difference_demo(L=10.0, K=2000, dim=2, bessel_bound=0.01)
    rep = frame_bounds(fr_diff)
    passed = rep.A >= 0.81 - 0.02 and rep.B <= 0.01 + 1.0 + 0.02
    return CheckResult(
        "difference_bounds",
        bool(passed),
        {"A": rep.A, "B": rep.B, "lower_floor": 0.79, "upper_ceiling": 1.03},
    )


def _gabor_atom(carrier: float, width: float, center: float):
    return lambda t: np.cos(2 * np.pi * carrier * (t - center)) * np.exp(
        -np.pi * (t - center) ** 2 / width**2
    )


def cwt_demo_signal(space: SpaceDescriptor) -> Vec:
    """Two narrow-band atoms with spectra inside the default scale band."""
    a1 = _gabor_atom(0.15, 8.0, -4.0)
    a2 = _gabor_atom(0.21, 9.0, 4.0)
    return sample_function(space, lambda t: a1(t) + 0.8 * a2(t))


def check_cwt_tight(scale: str = "full") -> CheckResult:
    space = SpaceDescriptor.sampled(-CWT_XHALF, CWT_XHALF, CWT_COUNT)
    psi = mexican_hat(space)
    w = WaveletSpec(psi, admissibility(psi))
    grid = scale_shift_grid(space, CWT_A_MIN, CWT_A_MAX, CWT_VOICES)
    f = cwt_demo_signal(space)
    field = cwt(f, w, grid)
    ratio = tight_energy_ratio(field, w.C_psi, f)
    f_hat = icwt(field, w)
    rel_err = norm(f_hat - f) / norm(f)
    passed = 0.98 <= ratio <= 1.02 and rel_err <= 0.02
    return CheckResult(
        "cwt_tight_frame",
        bool(passed),
        {
            "C_psi": w.C_psi,
            "energy_ratio": ratio,
            "reconstruction_error": rel_err,
            "scales": int(grid.scales.shape[0]),
            "shifts": int(grid.shifts.shape[0]),
        },
    )


def check_admissibility(scale: str = "full") -> CheckResult:
    space = SpaceDescriptor.sampled(-16.0, 16.0, 2048)
    psi = mexican_hat(space)
    C = admissibility(psi)
    from .wavelet import _spectral_terms

    _, terms = _spectral_terms(psi, pad=10)
    oracle = float(terms.sum())
    rel_dev = abs(C - oracle) / oracle
    gauss = sample_function(space, lambda t: np.exp(-np.pi * t**2))
    try:
        admissibility(gauss)
        gaussian_rejected = False
    except NotAdmissibleError:
        gaussian_rejected = True
    passed = rel_dev <= 1e-3 and gaussian_rejected
    return CheckResult(
        "admissibility",
        bool(passed),
        {
            "C_psi": C,
            "oracle": oracle,
            "relative_deviation": rel_dev,
            "gaussian_rejected": bool(gaussian_rejected),
        },
    )


def check_stft_orthogonality(scale: str = "full") -> CheckResult:
    space = SpaceDescriptor.sampled(-16.0, 16.0, 512)
    grid = time_freq_grid(space, -6.0, 6.0, 1 / 16, -6.0, 6.0, 1 / 16)
    phi = sample_function(space, lambda t: np.exp(-np.pi * t**2))
    herm = sample_function(space, lambda t: 2.0 * t * np.exp(-np.pi * t**2))
    shifted = sample_function(space, lambda t: np.exp(-np.pi * (t - 0.5) ** 2))
    max_gap = 0.0
    for f1, f2, g1, g2 in [
        (phi, herm, phi, phi),
        (phi, shifted, phi, herm),
        (herm, herm, shifted, phi),
        (phi, phi, phi, phi),
    ]:
        _, _, gap = orthogonality_relation(f1, f2, g1, g2, grid)
        max_gap = max(max_gap, gap)
    win = WindowSpec(phi)
    field = stft(phi, win, grid)
    lhs = grid.cell_weight * float(np.sum(np.abs(field.values) ** 2))
    tight_target = norm(phi) ** 2 * win.norm_sq
    tight_dev = abs(lhs - tight_target) / tight_target
    # closed-form check for f = g = exp(-pi t^2)
    yl = grid.shifts[None, :]
    gm = grid.freqs[:, None]
    oracle = (
        (2.0**-0.5)
        * np.exp(-np.pi * (yl**2 + gm**2) / 2.0)
        * np.exp(-1j * np.pi * yl * gm)
    )
    pointwise = float(np.max(np.abs(field.values - oracle)))
    passed = max_gap <= 1e-3 and tight_dev <= 1e-3 and pointwise <= 1e-4
    return CheckResult(
        "stft_orthogonality",
        bool(passed),
        {
            "max_gap": max_gap,
            "tight_relative_deviation": tight_dev,
            "max_pointwise_error": pointwise,
        },
    )


def check_determinism(scale: str = "small") -> CheckResult:
    """Serialize two independent runs of representative checks and compare bytes."""
    from .io import canonical_json

    def snapshot():
        parts = [
            check_bound_transfer("small"),
            check_bessel_only("small"),
            check_difference_bounds("small"),
            check_stft_orthogonality("small"),
        ]
        return canonical_json([p.to_json_dict() for p in parts])

    first = snapshot()
    second = snapshot()
    passed = first == second
    return CheckResult(
        "determinism",
        bool(passed),
        {"bytes": len(first), "identical": bool(passed)},
    )


CHECKS = [
    check_parseval_construction,
    check_bound_transfer,
    check_factorization,
    check_support_sets,
    check_bessel_only,
    check_profile_refinement,
    check_difference_bounds,
    check_cwt_tight,
    check_admissibility,
    check_stft_orthogonality,
    check_determinism,
]


def run_suite(scale: str = "small") -> dict:
    if scale not in ("small", "full"):
        raise ValueError(f"scale must be 'small' or 'full', got {scale!r}")
    checks = [fn(scale) for fn in CHECKS]
    return {
        "suite": {
            "scale": scale,
            "tool": {"name": "contframe", "version": __version__},
            "checks": [c.to_json_dict() for c in checks],
            "all_passed": bool(all(c.passed for c in checks)),
        }
    }
