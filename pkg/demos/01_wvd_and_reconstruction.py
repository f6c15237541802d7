"""Wigner-Ville distribution of a chirp and recovery of the signal from it.

Run: python3 demos/01_wvd_and_reconstruction.py
"""

import numpy as np

from tfdenoise import gen_signal, reconstruct, wvd, wvd_energy

f = gen_signal("LFM", 80.0)
w = wvd(f)
print(f"LFM at 80 Hz: {len(f)} samples, WVD grid {w.shape[0]} x {w.shape[1]}")

# energy of the distribution against ||f||^4
print(f"WVD energy {wvd_energy(w):.6f}, ||f||^4 {f.energy() ** 2:.6f}")

# the ridge follows the instantaneous frequency
freqs = w.axis1.values(w.shape[1])
for i in range(len(f) // 16, len(f), len(f) // 8):
    peak = freqs[np.argmax(w.values[i].real)]
    print(f"  t = {f.times[i]:+.2f} s  ridge at {peak:+.2f} Hz")

est = reconstruct(w, phase_ref=f)
corr = abs(np.vdot(est.samples, f.samples)) / (np.linalg.norm(est.samples) * np.linalg.norm(f.samples))
print(f"rank-one reconstruction correlation {corr:.6f}")
