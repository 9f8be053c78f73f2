"""
Spin contrast and cavity Q
==========================

Holding the loaded Q at 55 and moving only the split between waveguide
coupling and side leakage. Contrast is the resonant reflectance of m=+1
minus that of m=0.
"""

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from nvreadout import CavityParams, EmitterParams, contrast, purcell_factor, q_factors, run_preset

cols, rows = run_preset("fig5")
ratio = [r["eta_over_kappa"] for r in rows]
c = [r["contrast"] for r in rows]

fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(ratio, c)
ax.set_xlabel("eta / kappa")
ax.set_ylabel("contrast")
fig.tight_layout()
fig.savefig("contrast.png", dpi=120)

# %% A few design points: the target design and two lossier cavities
emitter = EmitterParams()
for label, r in [("target", 50.0), ("Q_bare ~ 585", 10.0), ("Q_bare ~ 1350", 23.5)]:
    cav = CavityParams.from_q_total(55.0, r)
    q_cav, q_tot = q_factors(cav)
    print(f"{label:14s} eta/kappa={r:5.1f}  Q_bare={q_cav:7.0f}  Q_tot={q_tot:4.0f}  "
          f"contrast={contrast(cav, emitter):.3f}  Purcell={purcell_factor(cav, emitter):.2f}")
