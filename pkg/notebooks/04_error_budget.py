"""
Readout error budget
====================

60 probe photons, 33% detection efficiency, a 6-count threshold and a 50 ns
dead-time detector run at a third of saturation. The budget adds Poisson
overlap, decoherence during the window and singlet shelving.
"""

# %%
from nvreadout import (CavityParams, DetectionSetup, EmitterParams, error_budget,
                       optimal_threshold)

emitter = EmitterParams()
setup = DetectionSetup()

for r in (50.0, 23.5, 10.0):
    cav = CavityParams.from_q_total(55.0, r)
    b = error_budget(cav, emitter, setup)
    print(f"eta/kappa = {r:4.1f}")
    for k, v in b.as_dict().items():
        print(f"    {k:18s} {v:.4g}")
    print("    best threshold   ", optimal_threshold(b.lambda_dark, b.lambda_bright))

# %% Fewer photons shorten the window but widen the Poisson overlap
cav = CavityParams.from_q_total(55.0, 50.0)
for n in (20, 40, 60, 100, 200):
    b = error_budget(cav, emitter, DetectionSetup(n_input_photons=n))
    print(f"n_in = {n:4d}  total = {b.total_error:.3e}")
