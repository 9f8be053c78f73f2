"""
Monte Carlo check of the analytic budget
========================================

A seeded simulation of the readout. With flips switched off the empirical
error must match the Poisson counting error; with every channel on it
brackets the analytic total (mid-window flips are not always errors, so the
simulated rate sits somewhat below the worst-case sum).
"""

# %%
import math

from nvreadout import McConfig, Scenario, error_budget, run_campaign

sc = Scenario()
analytic = error_budget(sc.cavity, sc.emitter, sc.setup)

quiet = sc.with_emitter(k_singlet_m0=0.0).with_setup(t2=math.inf)
res = run_campaign(McConfig(1_000_000, 1, quiet))
print(f"counting only: MC {res.empirical_total:.3e} +- {res.standard_errors['total']:.1e}"
      f"  analytic {analytic.counting_error:.3e}")

# %%
for strict in (False, True):
    res = run_campaign(McConfig(1_000_000, 1, sc, paper_strict_flip=strict))
    print(f"all channels (strict={strict}): MC {res.empirical_total:.3e}"
          f"  analytic {analytic.total_error:.3e}")

# %% Same seed, any number of worker threads, identical result
a = run_campaign(McConfig(200_000, 42, sc), workers=1)
b = run_campaign(McConfig(200_000, 42, sc), workers=4)
print("bit-identical:", a.as_dict() == b.as_dict())
