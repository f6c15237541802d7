"""One noisy chirp, six denoisers.

Fixed Cohen-class kernels smooth the noisy WVD blindly; the adaptive filter is
designed against the clean WVD, so it shows what a reference-aided filter can
reach. The 1-D Wiener filter is designed the same way on the signal spectrum.

Run: python3 demos/02_kernels_vs_adaptive.py [snr_db]
"""

import sys
import warnings

from tfdenoise import KernelSpec, add_noise, align_phase, denoise_lsaf, denoise_via_kernel, gen_signal, wiener_1d
from tfdenoise.metrics import mse_log10, psnr_avg

snr = float(sys.argv[1]) if len(sys.argv) > 1 else 0.0
f = gen_signal("GELFM", 100.0)
g = add_noise(f, "white", snr, seed=1)
print(f"GELFM, white noise at {snr:g} dB")
print(f"  {'noisy input':<20} mse {mse_log10(g, f):+.4f}  psnr {psnr_avg(g, f):7.3f} dB")

estimates = {}
with warnings.catch_warnings():
    warnings.simplefilter("ignore", UserWarning)
    for name in ("margenau-hill", "kirkwood-rihaczek", "born-jordan", "page"):
        estimates[name] = denoise_via_kernel(g, KernelSpec.named(name), phase_ref=f)
    estimates["wiener-1d"] = wiener_1d(f, g)
    estimates["adaptive-cctfd"] = denoise_lsaf(f, g)

for name, est in estimates.items():
    est = align_phase(est, f)
    print(f"  {name:<20} mse {mse_log10(est, f):+.4f}  psnr {psnr_avg(est, f):7.3f} dB")
