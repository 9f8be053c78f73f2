import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from nvreadout import SweepSpec, run_preset, run_sweep
from nvreadout.cli import main
from nvreadout.sweeps import FIG4_POINTS, format_csv


def _read_csv(path):
    text = path.read_text()
    assert text.endswith("\n")
    return list(csv.DictReader(io.StringIO(text)))


def _minima(values):
    v = np.asarray(values)
    return np.flatnonzero((v[1:-1] < v[:-2]) & (v[1:-1] < v[2:])) + 1


# ---- sweep specs -------------------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    dict(variable="q", min=0, max=1, n_points=3),
    dict(variable="kappa", min=1, max=1, n_points=3),
    dict(variable="kappa", min=0, max=1, n_points=1),
    dict(variable="kappa", min=0, max=1, n_points=3, scale="logarithmic"),
    dict(variable="kappa", min=0, max=1, n_points=3, scale="cubic"),
])
def test_sweep_spec_invariants(kwargs):
    with pytest.raises(ValueError):
        SweepSpec(**kwargs)


def test_sweep_grids():
    np.testing.assert_allclose(SweepSpec("g", 0, 10, 3).grid(), [0, 5, 10])
    np.testing.assert_allclose(SweepSpec("eta", 1, 100, 3, "logarithmic").grid(), [1, 10, 100])


@pytest.mark.parametrize("var, lo, hi", [("kappa", 1, 1e3), ("eta", 10, 1e5), ("g", 0, 60),
                                         ("gamma", 0.01, 1), ("threshold", 0, 12),
                                         ("n_input_photons", 1, 200),
                                         ("eta_over_kappa", 1, 100), ("detuning", -50, 50)])
def test_sweeps_ascending_and_bounded(scenario, var, lo, hi):
    cols, rows = run_sweep(scenario, SweepSpec(var, lo, hi, 13))
    xs = [row[cols[0]] for row in rows]
    assert xs == sorted(xs)
    for row in rows:
        for key in ("reflectance_m0", "reflectance_m_plus1"):
            assert -1e-12 <= row[key] <= 1 + 1e-12
        for key in ("counting_error", "decoherence_error", "singlet_error", "total_error"):
            if row.get(key) is not None:
                assert 0 <= row[key] <= 1


def test_eta_over_kappa_sweep_keeps_q_total(scenario):
    _, rows = run_sweep(scenario, SweepSpec("eta_over_kappa", 1, 100, 100))
    contrast = [r["contrast"] for r in rows]
    assert all(b >= a for a, b in zip(contrast, contrast[1:]))
    assert rows[49]["contrast"] == pytest.approx(0.92, abs=0.01)


def test_csv_format():
    text = format_csv(["a_ueV", "b", "c"], [{"a_ueV": 1 / 3, "b": 7, "c": None}])
    assert text == "a_ueV,b,c\n0.333333333,7,\n"


# ---- presets -------------------------------------------------------------

def test_fig4_crossover():
    cols, rows = run_preset("fig4")
    eta = np.array([r["eta_ueV"] for r in rows])
    R = np.array([r["reflectance_at_resonance"] for r in rows])
    assert len(rows) == FIG4_POINTS
    i = int(np.argmin(R))
    step = eta[i + 1] - eta[i] if eta[i] < 36000 else eta[i] - eta[i - 1]
    assert abs(eta[i] - 36000.0) <= step
    assert R[0] > 0.98
    assert rows[0]["regime"] != "weak_coupling" and rows[-1]["regime"] == "weak_coupling"


def test_fig3_presets():
    for name, n_min in [("fig3a", 1), ("fig3b", 2), ("fig3c", 2), ("fig3d", 2)]:
        _, rows = run_preset(name)
        R = [r["reflectance_m0"] for r in rows]
        assert len(_minima(R)) == n_min, name


def test_fig5_values():
    _, rows = run_preset("fig5")
    by_ratio = {r["eta_over_kappa"]: r for r in rows}
    assert by_ratio[50.0]["contrast"] == pytest.approx(0.92, abs=0.01)
    assert by_ratio[10.0]["contrast"] == pytest.approx(0.65, abs=0.02)
    assert all(r["q_total"] == pytest.approx(55.0) for r in rows)


def test_unknown_preset():
    with pytest.raises(ValueError):
        run_preset("fig9")


# ---- command line ---------------------------------------------------------------

def test_cli_preset_fig4(tmp_path):
    out = tmp_path / "fig4.csv"
    assert main(["preset", "fig4", "--out", str(out)]) == 0
    rows = _read_csv(out)
    assert list(rows[0]) == ["eta_ueV", "reflectance_at_resonance", "regime"]
    eta = np.array([float(r["eta_ueV"]) for r in rows])
    R = np.array([float(r["reflectance_at_resonance"]) for r in rows])
    i = int(np.argmin(R))
    assert abs(eta[i] - 36000) <= max(eta[i + 1] - eta[i], eta[i] - eta[i - 1])


def test_cli_preset_fig3d(tmp_path):
    out = tmp_path / "fig3d.csv"
    assert main(["preset", "fig3d", "--out", str(out)]) == 0
    rows = _read_csv(out)
    R = [float(r["reflectance_m0"]) for r in rows]
    assert len(_minima(R)) == 2


def test_cli_error_budget_default(tmp_path):
    out = tmp_path / "budget.json"
    assert main(["error-budget", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert 5e-3 <= data["total_error"] <= 9e-3
    for key in ("lambda_dark", "lambda_bright", "counting_error", "measurement_time",
                "decoherence_error", "singlet_error"):
        assert key in data


def test_cli_error_budget_csv(tmp_path):
    out = tmp_path / "budget.csv"
    assert main(["error-budget", "--format", "csv", "--out", str(out)]) == 0
    (row,) = _read_csv(out)
    assert 5e-3 <= float(row["total_error"]) <= 9e-3


def test_cli_contrast_and_spectrum(tmp_path):
    out = tmp_path / "c.json"
    assert main(["contrast", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["contrast_m_plus1"] == pytest.approx(0.92, abs=0.01)
    assert data["crossover_eta_ueV"] == pytest.approx(36000)
    out = tmp_path / "s.csv"
    assert main(["spectrum", "--min", "-5", "--max", "5", "--points", "11", "--out", str(out)]) == 0
    rows = _read_csv(out)
    assert len(rows) == 11 and list(rows[0]) == ["detuning_ueV", "re_r", "im_r", "reflectance"]


def test_cli_sweep_log(tmp_path):
    out = tmp_path / "sw.csv"
    argv = ["sweep", "--var", "eta", "--min", "100", "--max", "1e6", "--points", "5", "--log",
            "--out", str(out)]
    assert main(argv) == 0
    rows = _read_csv(out)
    assert [float(r["eta_ueV"]) for r in rows] == pytest.approx([1e2, 1e3, 1e4, 1e5, 1e6])


def test_cli_bit_identical_outputs(tmp_path):
    for argv in (["preset", "fig5"], ["simulate", "--trials", "5000", "--seed", "3"],
                 ["sweep", "--var", "g", "--min", "0", "--max", "50", "--points", "7"]):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes() and a.stat().st_size > 0


def test_cli_simulate(tmp_path):
    out = tmp_path / "mc.json"
    assert main(["simulate", "--trials", "20000", "--seed", "1", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["n_trials"] == 20000 and data["master_seed"] == 1
    assert 0 <= data["empirical_total"] <= 2


def test_cli_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cavity": {"kappa_ueV": 0.075, "eta_ueV": 3.75}}))
    out = tmp_path / "c.json"
    assert main(["contrast", "--config", str(cfg), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["regime"] == "strong_coupling"


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["preset", "fig9"],
    ["sweep", "--var", "kappa", "--min", "2", "--max", "1"],
    ["sweep", "--var", "kappa", "--min", "0", "--max", "1", "--log"],
    ["spectrum", "--unknown-flag"],
    ["simulate", "--trials", "0"],
    [],
])
def test_cli_invalid_input(argv, capsys):
    assert main(argv) == 1
    assert capsys.readouterr().err


def test_cli_bad_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cavity": {"kappa_ueV": -1}}))
    assert main(["contrast", "--config", str(cfg)]) == 1
    assert "kappa_ueV" in capsys.readouterr().err
    assert main(["contrast", "--config", str(tmp_path / "missing.json")]) == 1


def test_cli_internal_failure(monkeypatch, capsys):
    import nvreadout.cli as cli

    def boom(*args):
        raise RuntimeError("boom")

    monkeypatch.setitem(cli._COMMANDS, "contrast", boom)
    assert main(["contrast"]) == 2
    assert "internal error" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nvreadout", "error-budget"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert 5e-3 <= json.loads(proc.stdout)["total_error"] <= 9e-3
