"""Cavity-enhanced spin readout of a diamond NV center.

Reflection spectra of a single-sided emitter/cavity system, coupling-regime
classification, an analytic readout-error budget and a seeded Monte Carlo
check of that budget.
"""

from .cavity import (ASSUMPTIONS, CavityParams, CouplingRegime, EmitterParams,
                     ModelAssumptions, ReflectionSpectrum, SpinState,
                     classify_regime, contrast, crossover_eta, purcell_factor,
                     q_factors, reflectance, reflection_coefficient, spectrum)
from .montecarlo import (CampaignResult, McConfig, TrialOutcome, run_campaign,
                         run_trial)
from .readout import (DetectionSetup, ErrorBudget, counting_error,
                      decoherence_error, error_budget, expected_counts,
                      measurement_time, optimal_threshold, poisson_cdf,
                      poisson_pmf, singlet_error)
from .scenario import (ConfigError, McSettings, Scenario, load_config,
                       load_scenario, save_config)
from .sweeps import SweepSpec, run_preset, run_sweep
from .units import ghz_to_microev

__version__ = "0.1.0"
