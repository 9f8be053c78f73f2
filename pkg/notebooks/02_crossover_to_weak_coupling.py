"""
Resonant reflectance against waveguide coupling
===============================================

With side leakage neglected, the on-resonance reflectance vanishes when the
cavity damping reaches 4 g^2 / gamma (36 meV for g = 30 µeV and a 0.1 µeV
ZPL). Beyond this point the emitter barely perturbs the cavity.
"""

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from nvreadout import crossover_eta, run_preset

cols, rows = run_preset("fig4")
eta = np.array([r["eta_ueV"] for r in rows])
R = np.array([r["reflectance_at_resonance"] for r in rows])

print("predicted crossover:", crossover_eta(30.0, 0.1), "µeV")
print("sweep minimum     :", round(eta[np.argmin(R)], 1), "µeV")

# %%
fig, ax = plt.subplots(figsize=(6, 4))
ax.semilogx(eta, R)
ax.axvline(crossover_eta(30.0, 0.1), ls="--", c="gray")
ax.set_xlabel("eta (µeV)")
ax.set_ylabel("resonant |r|^2")
fig.tight_layout()
fig.savefig("crossover.png", dpi=120)

# %%
regimes = [r["regime"] for r in rows]
for name in dict.fromkeys(regimes):
    sel = eta[[g == name for g in regimes]]
    print(f"{name:22s} eta in [{sel.min():9.1f}, {sel.max():9.1f}] µeV")
