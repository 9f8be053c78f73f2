"""Analytic readout-error budget for reflection-based spin readout.

Three error channels are added:

* counting: Poisson overlap of the dark (m=0) and bright (m=+-1) count
  distributions at a fixed threshold, bright declared iff ``count >= threshold``
* decoherence: spin flip during the dead-time-limited measurement window
* singlet shelving: m=0 -> m=+-1 transfer through the intermediate singlet
  during the probe excitations
"""

import math
from dataclasses import asdict, dataclass

from .cavity import SpinState, purcell_factor, reflectance

#: Expected counts below this are treated as exactly zero.
LAMBDA_FLOOR = 1.0e-12


@dataclass(frozen=True)
class DetectionSetup:
    """Probe and detector settings.

    :param n_input_photons: mean number of probe photons per readout
    :param efficiency: overall detection efficiency
    :param threshold: minimum count to declare the bright (m=+-1) state
    :param dead_time: detector dead time in ns
    :param duty_factor: fraction of the saturation count rate used
    :param t2: spin coherence time in µs
    """
    n_input_photons: float = 60
    efficiency: float = 0.33
    threshold: int = 6
    dead_time: float = 50.0
    duty_factor: float = 1.0 / 3.0
    t2: float = 600.0

    def __post_init__(self):
        if not 0 <= self.efficiency <= 1:
            raise ValueError(f"efficiency must be in [0, 1], got {self.efficiency}")
        if not self.n_input_photons >= 1:
            raise ValueError(f"n_input_photons must be >= 1, got {self.n_input_photons}")
        if int(self.threshold) != self.threshold or self.threshold < 0:
            raise ValueError(f"threshold must be a nonnegative integer, got {self.threshold}")
        if not self.dead_time >= 0:
            raise ValueError(f"dead_time must be >= 0, got {self.dead_time}")
        if not 0 < self.duty_factor <= 1:
            raise ValueError(f"duty_factor must be in (0, 1], got {self.duty_factor}")
        if not self.t2 > 0:
            raise ValueError(f"t2 must be > 0, got {self.t2}")
        object.__setattr__(self, "threshold", int(self.threshold))


@dataclass(frozen=True)
class ErrorBudget:
    lambda_dark: float
    lambda_bright: float
    counting_error: float
    measurement_time: float
    decoherence_error: float
    singlet_error: float
    total_error: float

    def as_dict(self):
        return asdict(self)


def _check_prob(p, name):
    if not 0 <= p <= 1:
        raise ValueError(f"{name} must be in [0, 1], got {p}")


def expected_counts(setup, reflectance_value):
    """Mean detected photons for a given reflectance."""
    if not -1e-12 <= reflectance_value <= 1 + 1e-12:
        raise ValueError(f"reflectance must be in [0, 1], got {reflectance_value}")
    reflectance_value = min(max(reflectance_value, 0.0), 1.0)
    return setup.n_input_photons * setup.efficiency * reflectance_value


def _check_poisson_args(k, lam):
    if k < 0 or int(k) != k:
        raise ValueError(f"k must be a nonnegative integer, got {k}")
    if not lam >= 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    return int(k), (0.0 if lam < LAMBDA_FLOOR else float(lam))


def poisson_pmf(k, lam):
    """P(N = k) for N ~ Poisson(lam), evaluated in log space."""
    k, lam = _check_poisson_args(k, lam)
    if lam == 0.0:
        return 1.0 if k == 0 else 0.0
    return math.exp(k * math.log(lam) - lam - math.lgamma(k + 1))


def poisson_cdf(k, lam):
    """P(N <= k)."""
    k, lam = _check_poisson_args(k, lam)
    if k > lam:
        return 1.0 - poisson_sf(k, lam)
    return min(1.0, math.fsum(poisson_pmf(j, lam) for j in range(k + 1)))


def poisson_sf(k, lam):
    """P(N > k), summed upward so tiny tails keep their relative precision."""
    k, lam = _check_poisson_args(k, lam)
    if lam == 0.0:
        return 0.0
    if k < lam:
        return 1.0 - math.fsum(poisson_pmf(j, lam) for j in range(k + 1))
    terms = []
    term = poisson_pmf(k + 1, lam)
    j = k + 1
    while term > 0.0:
        terms.append(term)
        if term < 1e-18 * terms[0]:
            break
        j += 1
        term *= lam / j
    return math.fsum(terms)


def counting_error(lambda_dark, lambda_bright, threshold):
    """P(N >= t | dark) + P(N < t | bright) with bright declared iff N >= t."""
    if lambda_dark > lambda_bright:
        raise ValueError(
            f"lambda_dark ({lambda_dark}) must not exceed lambda_bright ({lambda_bright})")
    if threshold < 0 or int(threshold) != threshold:
        raise ValueError(f"threshold must be a nonnegative integer, got {threshold}")
    threshold = int(threshold)
    if threshold == 0:
        # every count is declared bright
        return 1.0
    false_bright = poisson_sf(threshold - 1, lambda_dark)
    false_dark = poisson_cdf(threshold - 1, lambda_bright)
    return min(1.0, false_bright + false_dark)


def optimal_threshold(lambda_dark, lambda_bright):
    """Threshold in ``[0, ceil(3*lambda_bright)]`` minimising the counting error.

    Ties go to the smaller threshold.
    """
    if not lambda_dark < lambda_bright:
        raise ValueError("optimal_threshold needs lambda_dark < lambda_bright")
    best_t, best_err = 0, counting_error(lambda_dark, lambda_bright, 0)
    for t in range(1, math.ceil(3 * lambda_bright) + 1):
        err = counting_error(lambda_dark, lambda_bright, t)
        if err < best_err:
            best_t, best_err = t, err
    return best_t


def measurement_time(n_detected, setup):
    """Time in µs to collect ``n_detected`` photons at the configured duty factor."""
    if n_detected < 0:
        raise ValueError(f"n_detected must be >= 0, got {n_detected}")
    return n_detected * setup.dead_time / setup.duty_factor * 1e-3


def decoherence_error(t_meas, t2):
    """Probability of a spin flip within ``t_meas`` for exponential decay at ``t2``."""
    if t_meas < 0 or not t2 > 0:
        raise ValueError("need t_meas >= 0 and t2 > 0")
    return -math.expm1(-t_meas / t2)


def shelving_probability(emitter, purcell):
    """Per-excitation branching into the singlet from the m=0 excited state.

    The radiative channel is enhanced to ``1 + purcell`` in units of 1/tau.
    """
    k = emitter.k_singlet_m0
    return k / (k + 1.0 + purcell)


def singlet_error(n_excitations, emitter, purcell):
    """Probability of at least one shelving event over ``n_excitations`` cycles."""
    if n_excitations < 0 or purcell < 0:
        raise ValueError("need n_excitations >= 0 and purcell >= 0")
    p1 = shelving_probability(emitter, purcell)
    if p1 == 0.0 or n_excitations == 0:
        return 0.0
    return -math.expm1(n_excitations * math.log1p(-p1))


def branch_means(cavity, emitter, setup, bright_spin=SpinState.M_PLUS1):
    """Expected counts ``(lambda_dark, lambda_bright)`` for a resonant probe."""
    r_dark = reflectance(cavity, emitter, SpinState.M0, 0.0)
    r_bright = reflectance(cavity, emitter, bright_spin, 0.0)
    return expected_counts(setup, r_dark), expected_counts(setup, r_bright)


def error_budget(cavity, emitter, setup, bright_spin=SpinState.M_PLUS1,
                 n_excitations=None):
    """Full readout-error budget.

    :param n_excitations: probe excitations charged to the singlet channel,
        defaults to every input photon
    """
    lam_dark, lam_bright = branch_means(cavity, emitter, setup, bright_spin)
    count_err = counting_error(lam_dark, lam_bright, setup.threshold)
    t_meas = measurement_time(lam_bright, setup)
    dec_err = decoherence_error(t_meas, setup.t2)
    if n_excitations is None:
        n_excitations = setup.n_input_photons
    sing_err = singlet_error(n_excitations, emitter, purcell_factor(cavity, emitter))
    total = min(1.0, max(0.0, count_err + dec_err + sing_err))
    for name, p in [("counting_error", count_err), ("decoherence_error", dec_err),
                    ("singlet_error", sing_err)]:
        _check_prob(p, name)
    return ErrorBudget(
        lambda_dark=lam_dark,
        lambda_bright=lam_bright,
        counting_error=count_err,
        measurement_time=t_meas,
        decoherence_error=dec_err,
        singlet_error=sing_err,
        total_error=total,
    )
