"""Unit conventions and conversion constants.

Rates, linewidths and detunings are energies in µeV (hbar absorbed). Optical
energies are in eV, times in ns or µs as named.
"""

#: Planck constant in µeV per GHz.
H_UEV_PER_GHZ = 4.135667696
#: Reduced Planck constant in µeV·ns.
HBAR_UEV_NS = 0.658212
UEV_PER_EV = 1.0e6
UEV_PER_MEV = 1.0e3


def ghz_to_microev(f_ghz):
    """Photon energy h*f in µeV for a frequency in GHz."""
    return H_UEV_PER_GHZ * f_ghz


def linewidth_from_lifetime(tau_ns):
    """Energy linewidth hbar/tau in µeV for a lifetime in ns."""
    if tau_ns <= 0:
        raise ValueError(f"lifetime must be positive, got {tau_ns}")
    return HBAR_UEV_NS / tau_ns
