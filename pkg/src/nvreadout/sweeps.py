"""One-dimensional parameter sweeps and the figure-reproduction presets."""

import csv
import io
import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .cavity import (CavityParams, SpinState, classify_regime, contrast,
                     q_factors, reflectance, spectrum)
from .readout import error_budget
from .scenario import Scenario

SWEEP_VARIABLES = ("kappa", "eta", "eta_over_kappa", "detuning", "g", "gamma",
                   "threshold", "n_input_photons")

_UNITS = {"kappa": "kappa_ueV", "eta": "eta_ueV", "eta_over_kappa": "eta_over_kappa",
          "detuning": "detuning_ueV", "g": "g_ueV", "gamma": "gamma_ueV",
          "threshold": "threshold", "n_input_photons": "n_input_photons"}


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    min: float
    max: float
    n_points: int
    scale: str = "linear"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}; "
                             f"choose from {', '.join(SWEEP_VARIABLES)}")
        if not self.min < self.max:
            raise ValueError("sweep min must be < max")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValueError("sweep needs n_points >= 2")
        if self.scale not in ("linear", "logarithmic"):
            raise ValueError(f"unknown scale {self.scale!r}")
        if self.scale == "logarithmic" and not self.min > 0:
            raise ValueError("logarithmic sweep needs min > 0")

    def grid(self):
        if self.scale == "logarithmic":
            return np.geomspace(self.min, self.max, int(self.n_points))
        return np.linspace(self.min, self.max, int(self.n_points))


def _budget_columns(scenario):
    try:
        b = error_budget(scenario.cavity, scenario.emitter, scenario.setup)
    except ValueError:
        # budget undefined when the m=0 branch is brighter than m=+1
        return {"counting_error": None, "decoherence_error": None,
                "singlet_error": None, "total_error": None}
    return {"counting_error": b.counting_error, "decoherence_error": b.decoherence_error,
            "singlet_error": b.singlet_error, "total_error": b.total_error}


def _apply(scenario, variable, value):
    cav = scenario.cavity
    if variable == "kappa":
        return scenario.with_cavity(kappa=value)
    if variable == "eta":
        return scenario.with_cavity(eta=value)
    if variable == "eta_over_kappa":
        # loaded Q held fixed, only the split between the channels moves
        total = cav.total_linewidth
        kappa = total / (1.0 + value)
        return scenario.with_cavity(kappa=kappa, eta=total - kappa)
    if variable == "g":
        return scenario.with_emitter(g=value)
    if variable == "gamma":
        return scenario.with_emitter(gamma=value)
    if variable == "threshold":
        return scenario.with_setup(threshold=int(round(value)))
    if variable == "n_input_photons":
        return scenario.with_setup(n_input_photons=value)
    raise ValueError(f"cannot apply sweep variable {variable!r}")


def run_sweep(scenario, spec):
    """Evaluate the scenario at each grid point, in ascending order.

    Returns ``(columns, rows)``. A detuning sweep emits the spectrum of both
    spin branches; any other variable emits resonant reflectances, contrast,
    coupling regime and the error budget.
    """
    grid = spec.grid()
    key = _UNITS[spec.variable]
    if spec.variable == "detuning":
        cols = [key, "reflectance_m0", "reflectance_m_plus1", "re_r_m0", "im_r_m0"]
        s0 = spectrum(scenario.cavity, scenario.emitter, SpinState.M0,
                      spec.min, spec.max, spec.n_points)
        r1 = reflectance(scenario.cavity, scenario.emitter, SpinState.M_PLUS1, grid)
        rows = [dict(zip(cols, vals)) for vals in
                zip(grid, s0.reflectance, r1, s0.r_complex.real, s0.r_complex.imag)]
        return cols, rows
    if spec.variable == "threshold":
        grid = np.unique(np.round(grid)).astype(int)
    cols = [key, "reflectance_m0", "reflectance_m_plus1", "contrast", "regime",
            "counting_error", "decoherence_error", "singlet_error", "total_error"]
    rows = []
    for value in grid:
        sc = _apply(scenario, spec.variable, value)
        row = {key: value,
               "reflectance_m0": reflectance(sc.cavity, sc.emitter, SpinState.M0),
               "reflectance_m_plus1": reflectance(sc.cavity, sc.emitter, SpinState.M_PLUS1),
               "contrast": contrast(sc.cavity, sc.emitter),
               "regime": classify_regime(sc.cavity, sc.emitter).value}
        row.update(_budget_columns(sc))
        rows.append(row)
    return cols, rows


# Figure presets: paper parameters, g = 30 µeV, gamma = 0.1 µeV throughout.
FIG3_KAPPAS = {"fig3a": 75.0, "fig3b": 7.5, "fig3c": 0.75, "fig3d": 0.075}
FIG3_ETA_OVER_KAPPA = 50.0
FIG3_SPAN_UEV = 100.0
FIG3_POINTS = 4001
FIG4_ETA_RANGE_UEV = (1.0e2, 1.0e6)
FIG4_POINTS = 200
FIG5_Q_TOTAL = 55.0
FIG5_RATIOS = np.arange(1, 101, dtype=float)
PRESETS = tuple(FIG3_KAPPAS) + ("fig4", "fig5")


def run_preset(name, scenario=None):
    """Data behind one figure as ``(columns, rows)``.

    Only the emitter parameters are taken from ``scenario``; cavity settings
    are fixed by the preset.
    """
    scenario = scenario or Scenario()
    emitter = scenario.emitter
    omega_c = scenario.cavity.omega_c
    if name in FIG3_KAPPAS:
        cav = CavityParams.from_kappa(FIG3_KAPPAS[name], FIG3_ETA_OVER_KAPPA, omega_c)
        sc = replace(scenario, cavity=cav)
        return run_sweep(sc, SweepSpec("detuning", -FIG3_SPAN_UEV, FIG3_SPAN_UEV, FIG3_POINTS))
    if name == "fig4":
        # side leakage neglected against the waveguide coupling
        etas = np.geomspace(*FIG4_ETA_RANGE_UEV, FIG4_POINTS)
        cols = ["eta_ueV", "reflectance_at_resonance", "regime"]
        rows = []
        for eta in etas:
            cav = CavityParams(kappa=0.0, eta=eta, omega_c=omega_c)
            rows.append({"eta_ueV": eta,
                         "reflectance_at_resonance": reflectance(cav, emitter, SpinState.M0),
                         "regime": classify_regime(cav, emitter).value})
        return cols, rows
    if name == "fig5":
        cols = ["eta_over_kappa", "contrast", "reflectance_m0", "reflectance_m_plus1",
                "q_cavity", "q_total"]
        rows = []
        for ratio in FIG5_RATIOS:
            cav = CavityParams.from_q_total(FIG5_Q_TOTAL, ratio, omega_c)
            q_cav, q_tot = q_factors(cav)
            rows.append({"eta_over_kappa": ratio,
                         "contrast": contrast(cav, emitter),
                         "reflectance_m0": reflectance(cav, emitter, SpinState.M0),
                         "reflectance_m_plus1": reflectance(cav, emitter, SpinState.M_PLUS1),
                         "q_cavity": q_cav, "q_total": q_tot})
        return cols, rows
    raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.9g}"


def format_csv(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def format_json(obj):
    return json.dumps(_jsonable(obj), indent=2) + "\n"
