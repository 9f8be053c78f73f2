"""
Reflection spectra across coupling regimes
==========================================

A weak probe reflected from a single-sided cavity that contains one NV
center. The cavity is locked to the m=0 zero-phonon transition and the
waveguide coupling is held at 50x the side leakage while the cavity
linewidth shrinks by decades, from the Purcell regime into strong coupling.
"""

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from nvreadout import CavityParams, EmitterParams, SpinState, classify_regime, spectrum

emitter = EmitterParams()  # g = 30 µeV, ZPL width 0.1 µeV
kappas = [75.0, 7.5, 0.75, 0.075]

# %%
fig, axes = plt.subplots(2, 2, figsize=(9, 6), sharey=True)
for ax, kappa in zip(axes.flat, kappas):
    cav = CavityParams.from_kappa(kappa, eta_over_kappa=50)
    s = spectrum(cav, emitter, SpinState.M0, -100, 100, 4001)
    ax.plot(s.detunings, s.reflectance)
    regime = classify_regime(cav, emitter).value
    ax.set_title(f"kappa = {kappa} µeV ({regime})", fontsize=9)
    minima = s.detunings[s.local_minima()]
    print(f"kappa = {kappa:6} µeV  {regime:22s}  reflectance minima at {np.round(minima, 2)} µeV")
for ax in axes[1]:
    ax.set_xlabel("probe detuning (µeV)")
for ax in axes[:, 0]:
    ax.set_ylabel("|r|^2")
fig.tight_layout()
fig.savefig("reflection_spectra.png", dpi=120)

# %% [markdown]
# In the narrowest cavity the two dips sit at +-g: the vacuum Rabi doublet.
# At kappa = 7.5 µeV the doublet merges into a small reflection peak on
# resonance, and at kappa = 75 µeV only a single dip remains.
