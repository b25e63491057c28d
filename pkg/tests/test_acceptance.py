"""End-to-end acceptance gate.

One test per certified property, each printing a single PASS/FAIL line
(visible with `pytest -s`).  Tolerances are asserted here explicitly on the
measured numbers, independent of each check's own pass flag, so weakening a
check cannot silently weaken the gate.  Wall-clock budgets are enforced
where a check carries one.
"""

import time

from contframe.verify import (
    check_admissibility,
    check_bessel_only,
    check_bound_transfer,
    check_cwt_tight,
    check_determinism,
    check_difference_bounds,
    check_factorization,
    check_parseval_construction,
    check_profile_refinement,
    check_stft_orthogonality,
    check_support_sets,
)


def _line(name: str, ok: bool, detail: str) -> None:
    print(f"[{name}] {'PASS' if ok else 'FAIL'}  {detail}")


def _timed(fn):
    t0 = time.perf_counter()
    res = fn("full")
    return res, time.perf_counter() - t0


def test_parseval_construction_bounds_and_reconstruction():
    res, dt = _timed(check_parseval_construction)
    m = res.measured
    ok = (
        res.passed
        and m["dims"] == [2, 64]
        and m["partitions_per_dim"] == 20
        and m["max_bound_deviation"] <= 1e-10
        and m["max_reconstruction_error"] <= 1e-12
        and dt < 5.0
    )
    _line(
        "parseval-construction",
        ok,
        f"dims 2..64 x20 partitions: bound dev {m['max_bound_deviation']:.2e} (<=1e-10), "
        f"recon err {m['max_reconstruction_error']:.2e} (<=1e-12), {dt:.2f}s (<5s)",
    )
    assert ok


def test_certified_bounds_match_eigenvalue_oracle():
    res, _ = _timed(check_bound_transfer)
    m = res.measured
    ok = res.passed and m["frames"] == 50 and m["max_bound_deviation"] <= 1e-10
    _line(
        "bound-transfer",
        ok,
        f"50 random frames dims 2..32: max |bound - eig| = {m['max_bound_deviation']:.2e} (<=1e-10)",
    )
    assert ok


def test_frame_operator_factorizes_through_analysis():
    res, _ = _timed(check_factorization)
    m = res.measured
    ok = res.passed and m["vectors_per_frame"] == 100 and m["max_gap"] <= 1e-12
    _line(
        "operator-factorization",
        ok,
        f"||Sf - synth(analysis(f))|| over 100 vectors: {m['max_gap']:.2e} (<=1e-12 ||f||)",
    )
    assert ok


def test_support_sets_nested_with_quadratic_mass_bound():
    res, _ = _timed(check_support_sets)
    m = res.measured
    ok = (
        res.passed
        and m["signals_per_map"] == 20
        and m["max_mass_over_bound"] <= 1.0 + 1e-12
        and m["nested"] is True
    )
    _line(
        "support-sets",
        ok,
        f"n=1..10 x20 signals: max mass/(n^2 B ||f||^2) = {m['max_mass_over_bound']:.3f} (<=1), "
        f"nested={m['nested']}",
    )
    assert ok


def test_bessel_only_upper_bound_certified():
    res, _ = _timed(check_bessel_only)
    m = res.measured
    ok = res.passed and m["verdict"] == "BesselOnly" and m["deviation"] <= 1e-10
    _line(
        "bessel-only",
        ok,
        f"4 vectors in dim 16: verdict {m['verdict']}, B dev {m['deviation']:.2e} (<=1e-10)",
    )
    assert ok


def test_unbounded_profile_refinement_study():
    res, dt = _timed(check_profile_refinement)
    m = res.measured
    ok = (
        res.passed
        and len(m["bounds"]) == 5
        and m["monotone"] is True
        and m["final_relative_deficit"] <= 0.01
        and m["peak_norm_ratio_16x"] >= 2.0 - 1e-9
        and dt < 10.0
    )
    _line(
        "profile-refinement",
        ok,
        f"B over 4 refinements: deficit {m['final_relative_deficit']:.4f} (<=0.01), monotone, "
        f"peak norm x{m['peak_norm_ratio_16x']:.3f} per 16x nodes (>=2), {dt:.2f}s (<10s)",
    )
    assert ok


def test_difference_frame_certified_window():
    res, _ = _timed(check_difference_bounds)
    m = res.measured
    ok = res.passed and m["A"] >= 0.79 and m["B"] <= 1.03
    _line(
        "difference-frame",
        ok,
        f"B1=0.01 against Parseval comparand: A={m['A']:.6f} (>=0.79), B={m['B']:.6f} (<=1.03)",
    )
    assert ok


def test_cwt_near_tight_and_invertible():
    res, dt = _timed(check_cwt_tight)
    m = res.measured
    ok = (
        res.passed
        and 0.98 <= m["energy_ratio"] <= 1.02
        and m["reconstruction_error"] <= 0.02
        and dt < 60.0
    )
    _line(
        "cwt-tight-frame",
        ok,
        f"two-atom signal, scales [0.25,8] x16 voices: energy ratio {m['energy_ratio']:.4f} "
        f"(in [0.98,1.02]), inverse err {m['reconstruction_error']:.4f} (<=0.02), {dt:.2f}s (<60s)",
    )
    assert ok


def test_admissibility_against_finer_oracle():
    res, _ = _timed(check_admissibility)
    m = res.measured
    ok = res.passed and m["relative_deviation"] <= 1e-3 and m["gaussian_rejected"] is True
    _line(
        "admissibility",
        ok,
        f"C_psi vs 10x-finer grid: rel dev {m['relative_deviation']:.2e} (<=1e-3), "
        f"gaussian rejected={m['gaussian_rejected']}",
    )
    assert ok


def test_windowed_transform_orthogonality():
    res, dt = _timed(check_stft_orthogonality)
    m = res.measured
    ok = (
        res.passed
        and m["max_gap"] <= 1e-3
        and m["tight_relative_deviation"] <= 1e-3
        and m["max_pointwise_error"] <= 1e-4
        and dt < 30.0
    )
    _line(
        "stft-orthogonality",
        ok,
        f"4 window/signal pairs: gap {m['max_gap']:.2e} (<=1e-3), tight dev "
        f"{m['tight_relative_deviation']:.2e} (<=1e-3), closed form {m['max_pointwise_error']:.2e} "
        f"(<=1e-4), {dt:.2f}s (<30s)",
    )
    assert ok


def test_verification_reports_byte_identical():
    res, _ = _timed(check_determinism)
    m = res.measured
    ok = res.passed and m["identical"] is True
    _line(
        "report-determinism",
        ok,
        f"two serialized runs compare equal over {m['bytes']} bytes: {m['identical']}",
    )
    assert ok
