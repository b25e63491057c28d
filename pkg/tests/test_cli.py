import json

import numpy as np
from click.testing import CliRunner

from contframe import __version__, io
from contframe.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, JobSpec, main, run
from contframe.spaces import SpaceDescriptor, sample_function


def _write_signals(tmp):
    sp = SpaceDescriptor.sampled(-16.0, 16.0, 512)
    io.write_signal(sample_function(sp, lambda t: np.exp(-np.pi * t**2)), tmp / "gauss.csv")
    chirp = sample_function(sp, lambda t: np.cos(2 * np.pi * 0.2 * t) * np.exp(-np.pi * (t / 6) ** 2))
    io.write_signal(chirp, tmp / "chirp.csv")


def test_construct_parseval_report(tmp_path):
    runner = CliRunner()
    rep = tmp_path / "rep.json"
    out = tmp_path / "fr.json"
    res = runner.invoke(main, ["construct", "--kind", "parseval", "--dim", "4", "--seed", "3",
                               "--expect", "parseval", "--out", str(out), "--report", str(rep)])
    assert res.exit_code == EXIT_OK
    body = json.loads(rep.read_text())
    assert body["tool"] == {"name": "contframe", "version": __version__}
    assert body["results"]["report"]["parseval"] is True
    assert body["results"]["report"]["verdict"] == "Frame"
    assert "frame_tol_factor" in body["tolerances"]
    assert out.exists()


def test_construct_expect_mismatch_is_verify_failure(tmp_path):
    runner = CliRunner()
    rep = tmp_path / "rep.json"
    res = runner.invoke(main, ["construct", "--kind", "bessel_only", "--dim", "16",
                               "--cells", "4", "--expect", "frame", "--report", str(rep)])
    assert res.exit_code == EXIT_VERIFY
    body = json.loads(rep.read_text())
    assert body["results"]["report"]["verdict"] == "BesselOnly"


def test_construct_rejects_bad_weights(tmp_path):
    runner = CliRunner()
    rep = tmp_path / "rep.json"
    res = runner.invoke(main, ["construct", "--kind", "parseval", "--dim", "2",
                               "--weights", "1.0,-2.0", "--report", str(rep)])
    assert res.exit_code == EXIT_INPUT
    assert "error" in json.loads(rep.read_text())


def test_bounds_round_trip(tmp_path):
    runner = CliRunner()
    out = tmp_path / "fr.json"
    res = runner.invoke(main, ["construct", "--kind", "ex29", "--half-width", "10",
                               "--nodes", "2000", "--b1", "0.01",
                               "--out", str(out), "--report", str(tmp_path / "r1.json")])
    assert res.exit_code == EXIT_OK
    rep = tmp_path / "r2.json"
    res = runner.invoke(main, ["bounds", "--frame", str(out), "--expect", "frame",
                               "--report", str(rep)])
    assert res.exit_code == EXIT_OK
    body = json.loads(rep.read_text())
    assert abs(body["results"]["report"]["A"] - 1.0) < 1e-6
    assert abs(body["results"]["report"]["B"] - 1.01) < 1e-6


def test_missing_input_is_input_error(tmp_path):
    runner = CliRunner()
    rep = tmp_path / "rep.json"
    res = runner.invoke(main, ["bounds", "--frame", str(tmp_path / "nosuch.json"),
                               "--report", str(rep)])
    assert res.exit_code == EXIT_INPUT
    assert "not found" in json.loads(rep.read_text())["error"]


def test_reconstruct_reports_residual(tmp_path):
    runner = CliRunner()
    out = tmp_path / "fr.json"
    runner.invoke(main, ["construct", "--kind", "parseval", "--dim", "6", "--seed", "2",
                         "--out", str(out), "--report", str(tmp_path / "r1.json")])
    rep = tmp_path / "r2.json"
    res = runner.invoke(main, ["reconstruct", "--frame", str(out), "--seed", "9",
                               "--report", str(rep)])
    assert res.exit_code == EXIT_OK
    body = json.loads(rep.read_text())
    assert body["results"]["residual"] <= 1e-8
    assert body["tolerances"]["tol_recon"] == 1e-8


def test_cwt_command_writes_field(tmp_path):
    _write_signals(tmp_path)
    runner = CliRunner()
    rep = tmp_path / "rep.json"
    out = tmp_path / "field.csv"
    res = runner.invoke(main, ["cwt", "--amin", "0.5", "--amax", "4", "--voices", "8",
                               "--signal", str(tmp_path / "chirp.csv"),
                               "--out", str(out), "--report", str(rep)])
    assert res.exit_code == EXIT_OK
    body = json.loads(rep.read_text())
    assert body["results"]["C_psi"] > 0
    assert 0.5 < body["results"]["energy_ratio"] < 1.5
    assert out.read_text().startswith("a,b,re,im")


def test_cwt_rejects_inadmissible_window(tmp_path):
    _write_signals(tmp_path)
    runner = CliRunner()
    rep = tmp_path / "rep.json"
    res = runner.invoke(main, ["cwt", "--wavelet", str(tmp_path / "gauss.csv"),
                               "--amin", "0.5", "--amax", "4",
                               "--signal", str(tmp_path / "chirp.csv"),
                               "--out", str(tmp_path / "f.csv"), "--report", str(rep)])
    assert res.exit_code == EXIT_VERIFY
    assert "NotAdmissible" in json.loads(rep.read_text())["results"]["error"]


def test_stft_command_writes_field(tmp_path):
    _write_signals(tmp_path)
    runner = CliRunner()
    rep = tmp_path / "rep.json"
    out = tmp_path / "tf.csv"
    res = runner.invoke(main, ["stft", "--ymin", "-6", "--ymax", "6", "--dy", "0.0625",
                               "--gmin", "-6", "--gmax", "6", "--dg", "0.0625",
                               "--signal", str(tmp_path / "gauss.csv"),
                               "--out", str(out), "--report", str(rep)])
    assert res.exit_code == EXIT_OK
    body = json.loads(rep.read_text())
    assert abs(body["results"]["energy_identity_ratio"] - 1.0) < 1e-3
    assert out.read_text().startswith("y,gamma,re,im")


def test_verify_command(tmp_path):
    runner = CliRunner()
    rep = tmp_path / "rep.json"
    res = runner.invoke(main, ["verify", "--scale", "small", "--report", str(rep)])
    assert res.exit_code == EXIT_OK
    body = json.loads(rep.read_text())
    suite = body["results"]["suite"]
    assert suite["all_passed"] is True
    assert len(suite["checks"]) == 11


def test_reports_are_deterministic(tmp_path):
    runner = CliRunner()
    reps = []
    for name in ("a.json", "b.json"):
        rep = tmp_path / name
        res = runner.invoke(main, ["construct", "--kind", "parseval", "--dim", "5",
                                   "--seed", "8", "--report", str(rep)])
        assert res.exit_code == EXIT_OK
        text = rep.read_text()
        reps.append(text.replace(name, "REPORT"))
    assert reps[0] == reps[1]


def test_unknown_command_via_jobspec(tmp_path):
    rep = tmp_path / "rep.json"
    code = run(JobSpec("frobnicate", {}, {"report": str(rep)}))
    assert code == EXIT_INPUT
    assert "unknown command" in json.loads(rep.read_text())["error"]


def test_version_flag():
    runner = CliRunner()
    res = runner.invoke(main, ["--version"])
    assert res.exit_code == 0
    assert __version__ in res.output
