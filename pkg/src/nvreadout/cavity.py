"""Reflection from a single-sided cavity containing one two-level emitter.

The steady-state, weak-excitation solution of the cavity/emitter Heisenberg
equations combined with the input-output relation gives a closed form for the
complex reflection amplitude. All rates and detunings are in µeV.

Detuning conventions used throughout:

* ``detuning`` is the probe detuning ``omega - omega_c``.
* The cavity is locked to the m=0 transition, so the emitter resonance sits at
  ``omega_c + delta`` where ``delta`` is 0 for m=0 and the spin-state
  transition offset otherwise.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .units import UEV_PER_EV, ghz_to_microev, linewidth_from_lifetime

#: Zero-phonon line at 637 nm.
DEFAULT_OMEGA_C_EV = 1.9464
DEFAULT_Q_TOTAL = 55.0
DEFAULT_ETA_OVER_KAPPA = 50.0


class SpinState(enum.Enum):
    M0 = "m0"
    M_PLUS1 = "m_plus1"
    M_MINUS1 = "m_minus1"


class CouplingRegime(enum.Enum):
    STRONG_COUPLING = "strong_coupling"
    ONE_DIMENSIONAL_ATOM = "one_dimensional_atom"
    WEAK_COUPLING = "weak_coupling"


def _split_total_linewidth(q_total, eta_over_kappa, omega_c_ev):
    total = omega_c_ev * UEV_PER_EV / q_total
    kappa = total / (1.0 + eta_over_kappa)
    return kappa, total - kappa


_DEFAULT_KAPPA, _DEFAULT_ETA = _split_total_linewidth(
    DEFAULT_Q_TOTAL, DEFAULT_ETA_OVER_KAPPA, DEFAULT_OMEGA_C_EV)


@dataclass(frozen=True)
class CavityParams:
    """Cavity decay channels.

    :param kappa: side-leakage rate in µeV
    :param eta: waveguide (input/output) coupling rate in µeV
    :param omega_c: cavity resonance energy in eV
    """
    kappa: float = _DEFAULT_KAPPA
    eta: float = _DEFAULT_ETA
    omega_c: float = DEFAULT_OMEGA_C_EV

    def __post_init__(self):
        if not self.kappa >= 0:
            raise ValueError(f"kappa must be >= 0, got {self.kappa}")
        if not self.eta >= 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if not self.kappa + self.eta > 0:
            raise ValueError("kappa + eta must be > 0")
        if not self.omega_c > 0:
            raise ValueError(f"omega_c must be > 0, got {self.omega_c}")

    @classmethod
    def from_q_total(cls, q_total=DEFAULT_Q_TOTAL,
                     eta_over_kappa=DEFAULT_ETA_OVER_KAPPA,
                     omega_c=DEFAULT_OMEGA_C_EV):
        """Cavity with loaded Q ``omega_c/(kappa+eta)`` and a given eta/kappa ratio."""
        if q_total <= 0 or eta_over_kappa < 0:
            raise ValueError("q_total must be > 0 and eta_over_kappa >= 0")
        kappa, eta = _split_total_linewidth(q_total, eta_over_kappa, omega_c)
        return cls(kappa=kappa, eta=eta, omega_c=omega_c)

    @classmethod
    def from_kappa(cls, kappa, eta_over_kappa=DEFAULT_ETA_OVER_KAPPA,
                   omega_c=DEFAULT_OMEGA_C_EV):
        return cls(kappa=kappa, eta=eta_over_kappa * kappa, omega_c=omega_c)

    @property
    def total_linewidth(self):
        return self.kappa + self.eta


@dataclass(frozen=True)
class EmitterParams:
    """Emitter parameters, energies in µeV.

    Singlet branching rates are in units of the radiative rate ``1/tau_rad``.
    """
    g: float = 30.0
    gamma: float = 0.1
    delta_m_plus1: float = ghz_to_microev(1.4)
    delta_m_minus1: float = ghz_to_microev(2.5)
    tau_rad: float = 13.0
    k_singlet_m0: float = 1.0e-4
    k_singlet_m1: float = 0.4

    def __post_init__(self):
        if not self.g >= 0:
            raise ValueError(f"g must be >= 0, got {self.g}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if not self.tau_rad > 0:
            raise ValueError(f"tau_rad must be > 0, got {self.tau_rad}")
        if not 0 <= self.k_singlet_m0 <= self.k_singlet_m1:
            raise ValueError("need 0 <= k_singlet_m0 <= k_singlet_m1")

    def transition_detuning(self, spin):
        """Offset of the emitter transition for ``spin`` from the cavity."""
        spin = SpinState(spin)
        if spin is SpinState.M0:
            return 0.0
        if spin is SpinState.M_PLUS1:
            return self.delta_m_plus1
        return self.delta_m_minus1

    @property
    def radiative_linewidth(self):
        return linewidth_from_lifetime(self.tau_rad)


@dataclass(frozen=True)
class ModelAssumptions:
    """Fixed assumptions of the reflection model.

    The probe is a weak classical field, so the emitter stays in its ground
    state and the population inversion is pinned at -1.
    """
    sigma_z: float = -1.0
    probe_is_classical_weak_field: bool = True

    def __post_init__(self):
        if self.sigma_z != -1.0 or not self.probe_is_classical_weak_field:
            raise ValueError("only the weak-excitation limit (sigma_z = -1) is supported")


ASSUMPTIONS = ModelAssumptions()


@dataclass(frozen=True)
class ReflectionSpectrum:
    detunings: np.ndarray
    r_complex: np.ndarray
    reflectance: np.ndarray = field(default=None)

    def __post_init__(self):
        d = np.asarray(self.detunings, dtype=float)
        r = np.asarray(self.r_complex, dtype=complex)
        R = np.abs(r) ** 2 if self.reflectance is None else np.asarray(self.reflectance, dtype=float)
        if not (d.ndim == r.ndim == R.ndim == 1 and len(d) == len(r) == len(R) >= 2):
            raise ValueError("spectrum arrays must be 1-d, equal length and >= 2 points")
        if not np.allclose(R, np.abs(r) ** 2, rtol=0, atol=1e-12):
            raise ValueError("reflectance must equal |r|^2")
        object.__setattr__(self, "detunings", d)
        object.__setattr__(self, "r_complex", r)
        object.__setattr__(self, "reflectance", R)

    def local_minima(self):
        """Indices of strict interior local minima of the reflectance."""
        R = self.reflectance
        return np.flatnonzero((R[1:-1] < R[:-2]) & (R[1:-1] < R[2:])) + 1

    def local_maxima(self):
        R = self.reflectance
        return np.flatnonzero((R[1:-1] > R[:-2]) & (R[1:-1] > R[2:])) + 1


def reflection_coefficient(cavity, emitter, spin=SpinState.M0, detuning=0.0):
    """Complex reflection amplitude ``b_out/b_in``.

    :param cavity: CavityParams
    :param emitter: EmitterParams
    :param spin: ground-state spin, selects the emitter transition offset
    :param detuning: probe detuning ``omega - omega_c`` in µeV, scalar or array
    :returns: complex scalar or array matching ``detuning``
    """
    x = np.asarray(detuning, dtype=float)
    delta = emitter.transition_detuning(spin)
    emitter_term = 1j * (delta - x) + emitter.gamma / 2
    coupling = -ASSUMPTIONS.sigma_z * emitter.g ** 2
    num = emitter_term * (-1j * x + (cavity.kappa - cavity.eta) / 2) + coupling
    den = emitter_term * (-1j * x + (cavity.kappa + cavity.eta) / 2) + coupling
    r = num / den
    return complex(r) if r.ndim == 0 else r


def reflectance(cavity, emitter, spin=SpinState.M0, detuning=0.0):
    """Reflected intensity fraction ``|r|^2``."""
    r = reflection_coefficient(cavity, emitter, spin, detuning)
    R = np.abs(r) ** 2
    return float(R) if np.ndim(R) == 0 else R


def spectrum(cavity, emitter, spin=SpinState.M0, detuning_min=-100.0,
             detuning_max=100.0, n_points=2001):
    """Reflection spectrum on a uniform grid including both endpoints."""
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    if not detuning_min < detuning_max:
        raise ValueError("detuning_min must be < detuning_max")
    x = np.linspace(detuning_min, detuning_max, int(n_points))
    r = reflection_coefficient(cavity, emitter, spin, x)
    return ReflectionSpectrum(x, r, np.abs(r) ** 2)


def contrast(cavity, emitter, bright_spin=SpinState.M_PLUS1):
    """Resonant reflectance of ``bright_spin`` minus that of m=0.

    The probe sits on the cavity, which is locked to the m=0 transition.
    """
    bright_spin = SpinState(bright_spin)
    if bright_spin is SpinState.M0:
        raise ValueError("bright_spin must differ from m0")
    return (reflectance(cavity, emitter, bright_spin, 0.0)
            - reflectance(cavity, emitter, SpinState.M0, 0.0))


def crossover_eta(g, gamma):
    """Total cavity damping at which the resonant reflectance vanishes (4 g^2/gamma)."""
    if not gamma > 0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    return 4.0 * g ** 2 / gamma


def classify_regime(cavity, emitter):
    """Coupling regime from the ordering of g, gamma and kappa+eta.

    Exact ties fall to the less strongly coupled regime. Points with g <= gamma
    below the weak-coupling crossover are reported as one-dimensional atom.
    """
    total = cavity.total_linewidth
    g, gamma = emitter.g, emitter.gamma
    if total >= crossover_eta(g, gamma):
        return CouplingRegime.WEAK_COUPLING
    if g > total and g > gamma:
        return CouplingRegime.STRONG_COUPLING
    return CouplingRegime.ONE_DIMENSIONAL_ATOM


def q_factors(cavity):
    """Return ``(q_cavity, q_total)``; ``q_cavity`` is ``inf`` when kappa is zero."""
    omega = cavity.omega_c * UEV_PER_EV
    q_cavity = math.inf if cavity.kappa == 0 else omega / cavity.kappa
    return q_cavity, omega / cavity.total_linewidth


def purcell_factor(cavity, emitter):
    """Purcell enhancement 4 g^2 / ((kappa+eta) * hbar/tau_rad).

    Uses the radiative linewidth rather than the zero-phonon linewidth.
    """
    return 4.0 * emitter.g ** 2 / (cavity.total_linewidth * emitter.radiative_linewidth)
