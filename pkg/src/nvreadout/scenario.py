"""Scenario composition and the JSON configuration format.

Every config key carries its unit as a suffix. Absent keys take the default
(paper) values; unknown keys are rejected.
"""

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .cavity import CavityParams, EmitterParams, ModelAssumptions
from .readout import DetectionSetup


class ConfigError(ValueError):
    """Invalid configuration; ``key`` names the offending entry."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class McSettings:
    n_trials: int = 100_000
    master_seed: int = 20080623
    paper_strict_flip: bool = False


@dataclass(frozen=True)
class Scenario:
    cavity: CavityParams = field(default_factory=CavityParams)
    emitter: EmitterParams = field(default_factory=EmitterParams)
    setup: DetectionSetup = field(default_factory=DetectionSetup)
    assumptions: ModelAssumptions = field(default_factory=ModelAssumptions)

    def with_cavity(self, **changes):
        return replace(self, cavity=replace(self.cavity, **changes))

    def with_emitter(self, **changes):
        return replace(self, emitter=replace(self.emitter, **changes))

    def with_setup(self, **changes):
        return replace(self, setup=replace(self.setup, **changes))


def _real(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _integer(value):
    return isinstance(value, int) and not isinstance(value, bool)


# section -> [(json key, dataclass field, check, description)]
_SCHEMA = {
    "cavity": [
        ("kappa_ueV", "kappa", lambda v: _real(v) and v >= 0, "a real number >= 0"),
        ("eta_ueV", "eta", lambda v: _real(v) and v >= 0, "a real number >= 0"),
        ("omega_c_eV", "omega_c", lambda v: _real(v) and v > 0, "a real number > 0"),
    ],
    "emitter": [
        ("g_ueV", "g", lambda v: _real(v) and v >= 0, "a real number >= 0"),
        ("gamma_ueV", "gamma", lambda v: _real(v) and v > 0, "a real number > 0"),
        ("delta_m_plus1_ueV", "delta_m_plus1", _real, "a real number"),
        ("delta_m_minus1_ueV", "delta_m_minus1", _real, "a real number"),
        ("tau_ns", "tau_rad", lambda v: _real(v) and v > 0, "a real number > 0"),
        ("k_singlet_m0", "k_singlet_m0", lambda v: _real(v) and v >= 0, "a real number >= 0"),
        ("k_singlet_m1", "k_singlet_m1", lambda v: _real(v) and v >= 0, "a real number >= 0"),
    ],
    "detection": [
        ("n_input_photons", "n_input_photons", lambda v: _real(v) and v >= 1, "a number >= 1"),
        ("efficiency", "efficiency", lambda v: _real(v) and 0 <= v <= 1, "a number in [0, 1]"),
        ("threshold", "threshold", lambda v: _integer(v) and v >= 0, "an integer >= 0"),
        ("dead_time_ns", "dead_time", lambda v: _real(v) and v >= 0, "a real number >= 0"),
        ("duty_factor", "duty_factor", lambda v: _real(v) and 0 < v <= 1, "a number in (0, 1]"),
        ("t2_us", "t2", lambda v: _real(v) and v > 0, "a real number > 0"),
    ],
    "monte_carlo": [
        ("n_trials", "n_trials", lambda v: _integer(v) and v >= 1, "an integer >= 1"),
        ("master_seed", "master_seed", lambda v: _integer(v) and 0 <= v < 2 ** 64,
         "an integer in [0, 2**64)"),
        ("paper_strict_flip", "paper_strict_flip", lambda v: isinstance(v, bool), "true or false"),
    ],
}

_TYPES = {
    "cavity": CavityParams,
    "emitter": EmitterParams,
    "detection": DetectionSetup,
    "monte_carlo": McSettings,
}


def _parse_section(name, raw):
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(name, "section must be a JSON object")
    known = {key: (attr, check, desc) for key, attr, check, desc in _SCHEMA[name]}
    kwargs = {}
    for key, value in raw.items():
        if key not in known:
            raise ConfigError(f"{name}.{key}", "unknown key")
        attr, check, desc = known[key]
        if not check(value):
            raise ConfigError(key, f"must be {desc}, got {value!r}")
        kwargs[attr] = value
    try:
        return _TYPES[name](**kwargs)
    except ValueError as exc:
        # cross-field invariants, e.g. kappa + eta > 0
        raise ConfigError(name, str(exc)) from None


def config_from_dict(data):
    """Parse a config mapping into ``(Scenario, McSettings)``."""
    if not isinstance(data, dict):
        raise ConfigError("<root>", "config must be a JSON object")
    for key in data:
        if key not in _SCHEMA:
            raise ConfigError(key, "unknown section")
    scenario = Scenario(
        cavity=_parse_section("cavity", data.get("cavity")),
        emitter=_parse_section("emitter", data.get("emitter")),
        setup=_parse_section("detection", data.get("detection")),
    )
    return scenario, _parse_section("monte_carlo", data.get("monte_carlo"))


def config_to_dict(scenario, mc=None):
    """Inverse of :func:`config_from_dict`, with every key present."""
    objs = {"cavity": scenario.cavity, "emitter": scenario.emitter,
            "detection": scenario.setup, "monte_carlo": mc or McSettings()}
    return {section: {key: getattr(objs[section], attr) for key, attr, _, _ in entries}
            for section, entries in _SCHEMA.items()}


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(str(path), f"cannot read config ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"invalid JSON ({exc})") from None
    return config_from_dict(data)


def load_scenario(path):
    """Read a JSON config file and return its :class:`Scenario`."""
    return load_config(path)[0]


def save_config(path, scenario, mc=None):
    Path(path).write_text(json.dumps(config_to_dict(scenario, mc), indent=2) + "\n")
