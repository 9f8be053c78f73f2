"""Seeded Monte Carlo of the readout experiment.

Each trial prepares a spin, probes the cavity on resonance and counts
reflected photons. Two stochastic events can flip the spin partway through
the measurement window:

* decoherence, probability ``1 - exp(-t_meas/T2)`` in either branch, with
  ``t_meas`` the window needed to collect the bright-branch mean
* singlet shelving, m=0 branch only, with the analytic per-readout probability

A flip at fractional time ``f`` (uniform) makes the remaining ``1 - f`` of the
window count at the opposite branch mean. With ``paper_strict_flip`` any flip
is scored as an error regardless of the counts.

Trials are grouped into fixed blocks of :data:`BLOCK_SIZE` consecutive trial
indices. Block ``b`` of branch ``s`` draws from its own Philox stream keyed by
``(master_seed, s, b)``, so results do not depend on how blocks are scheduled.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cavity import SpinState, purcell_factor
from .readout import (branch_means, decoherence_error, measurement_time,
                      singlet_error)
from .scenario import Scenario

BLOCK_SIZE = 1 << 16
#: Poisson means at or above this fall back to numpy's sampler.
INVERSION_LIMIT = 30.0

_BRANCH_INDEX = {SpinState.M0: 0, SpinState.M_PLUS1: 1, SpinState.M_MINUS1: 2}


@dataclass(frozen=True)
class TrialOutcome:
    true_spin: SpinState
    detected_counts: int
    declared_spin: str  # "dark" or "bright"
    spin_flipped_during_measurement: bool
    shelved_in_singlet: bool


@dataclass(frozen=True)
class McConfig:
    n_trials: int
    master_seed: int
    scenario: Scenario = field(default_factory=Scenario)
    paper_strict_flip: bool = False
    bright_spin: SpinState = SpinState.M_PLUS1

    def __post_init__(self):
        if int(self.n_trials) != self.n_trials or self.n_trials < 1:
            raise ValueError(f"n_trials must be an integer >= 1, got {self.n_trials}")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if SpinState(self.bright_spin) is SpinState.M0:
            raise ValueError("bright_spin must differ from m0")


@dataclass(frozen=True)
class CampaignResult:
    n_trials: int
    empirical_dark_error: float
    empirical_bright_error: float
    empirical_total: float
    standard_errors: dict
    dark_count_histogram: np.ndarray
    bright_count_histogram: np.ndarray

    def as_dict(self):
        return {
            "n_trials": self.n_trials,
            "empirical_dark_error": self.empirical_dark_error,
            "empirical_bright_error": self.empirical_bright_error,
            "empirical_total": self.empirical_total,
            "standard_errors": dict(self.standard_errors),
        }


@dataclass(frozen=True)
class _BranchModel:
    lam_own: float
    lam_other: float
    p_flip: float
    p_shelve: float
    threshold: int
    dark: bool


def _branch_model(scenario, spin, bright_spin=SpinState.M_PLUS1):
    spin = SpinState(spin)
    if spin is not SpinState.M0:
        bright_spin = spin
    lam_dark, lam_bright = branch_means(scenario.cavity, scenario.emitter,
                                        scenario.setup, bright_spin)
    setup = scenario.setup
    p_flip = decoherence_error(measurement_time(lam_bright, setup), setup.t2)
    dark = spin is SpinState.M0
    if dark:
        purcell = purcell_factor(scenario.cavity, scenario.emitter)
        p_shelve = singlet_error(setup.n_input_photons, scenario.emitter, purcell)
        return _BranchModel(lam_dark, lam_bright, p_flip, p_shelve, setup.threshold, True)
    return _BranchModel(lam_bright, lam_dark, p_flip, 0.0, setup.threshold, False)


def poisson_inversion(lam, u):
    """Poisson variates by sequential CDF inversion of uniforms ``u``.

    Exact up to floating point for moderate means; ``lam`` must stay below
    roughly 700 so that ``exp(-lam)`` does not underflow.
    """
    lam = np.asarray(lam, dtype=float)
    u = np.asarray(u, dtype=float)
    lam, u = np.broadcast_arrays(lam, u)
    k = np.zeros(lam.shape, dtype=np.int64)
    p = np.exp(-lam)
    cdf = p.copy()
    idx = np.flatnonzero(u > cdf)
    kmax = int(np.max(lam, initial=0.0) + 40 * math.sqrt(np.max(lam, initial=0.0)) + 60)
    step = 0
    while idx.size and step < kmax:
        step += 1
        k[idx] += 1
        p[idx] *= lam[idx] / k[idx]
        cdf[idx] += p[idx]
        idx = idx[u[idx] > cdf[idx]]
    return k


def _poisson(rng, lam, u):
    small = lam < INVERSION_LIMIT
    if small.all():
        return poisson_inversion(lam, u)
    counts = np.empty(lam.shape, dtype=np.int64)
    counts[small] = poisson_inversion(lam[small], u[small])
    counts[~small] = rng.poisson(lam[~small])
    return counts


def _simulate(model, n, rng, strict):
    """Vectorised trials for one branch; returns (counts, flipped, shelved, error)."""
    u_count = rng.random(n)
    flipped = rng.random(n) < model.p_flip
    shelved = rng.random(n) < model.p_shelve
    t_flip = rng.random(n)
    t_shelve = rng.random(n)
    frac = np.ones(n)
    frac = np.where(flipped, np.minimum(frac, t_flip), frac)
    frac = np.where(shelved, np.minimum(frac, t_shelve), frac)
    lam = frac * model.lam_own + (1.0 - frac) * model.lam_other
    counts = _poisson(rng, lam, u_count)
    bright = counts >= model.threshold
    error = bright if model.dark else ~bright
    if strict:
        error = error | flipped | shelved
    return counts, flipped, shelved, error


def _rng(master_seed, branch, block):
    seq = np.random.SeedSequence(master_seed, spawn_key=(branch, block))
    return np.random.Generator(np.random.Philox(seq))


def run_trial(scenario, spin, stream, paper_strict_flip=False):
    """Simulate one readout of ``spin`` using the generator ``stream``."""
    spin = SpinState(spin)
    model = _branch_model(scenario, spin)
    counts, flipped, shelved, _ = _simulate(model, 1, stream, paper_strict_flip)
    n = int(counts[0])
    return TrialOutcome(
        true_spin=spin,
        detected_counts=n,
        declared_spin="bright" if n >= model.threshold else "dark",
        spin_flipped_during_measurement=bool(flipped[0]),
        shelved_in_singlet=bool(shelved[0]),
    )


def _run_block(model, n, master_seed, branch, block, strict):
    counts, _, _, error = _simulate(model, n, _rng(master_seed, branch, block), strict)
    return int(error.sum()), np.bincount(counts)


def _add_hist(a, b):
    out = np.zeros(max(len(a), len(b)), dtype=np.int64)
    out[:len(a)] += a
    out[:len(b)] += b
    return out


def _run_branch(config, spin, workers):
    model = _branch_model(config.scenario, spin, config.bright_spin)
    branch = _BRANCH_INDEX[SpinState(spin)]
    n_blocks = -(-config.n_trials // BLOCK_SIZE)
    sizes = [min(BLOCK_SIZE, config.n_trials - b * BLOCK_SIZE) for b in range(n_blocks)]
    args = [(model, sizes[b], config.master_seed, branch, b, config.paper_strict_flip)
            for b in range(n_blocks)]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda a: _run_block(*a), args))
    else:
        results = [_run_block(*a) for a in args]
    errors = sum(r[0] for r in results)
    hist = np.zeros(1, dtype=np.int64)
    for _, h in results:
        hist = _add_hist(hist, h)
    return errors, hist


def run_campaign(config, workers=1):
    """Run ``n_trials`` per branch (m=0 and the bright spin).

    The total is the sum of the two branch error rates, the same convention as
    the analytic counting error.
    """
    n = config.n_trials
    dark_errors, dark_hist = _run_branch(config, SpinState.M0, workers)
    bright_errors, bright_hist = _run_branch(config, config.bright_spin, workers)
    p_dark = dark_errors / n
    p_bright = bright_errors / n
    se_dark = math.sqrt(p_dark * (1 - p_dark) / n)
    se_bright = math.sqrt(p_bright * (1 - p_bright) / n)
    return CampaignResult(
        n_trials=n,
        empirical_dark_error=p_dark,
        empirical_bright_error=p_bright,
        empirical_total=p_dark + p_bright,
        standard_errors={"dark": se_dark, "bright": se_bright,
                         "total": math.hypot(se_dark, se_bright)},
        dark_count_histogram=dark_hist,
        bright_count_histogram=bright_hist,
    )
