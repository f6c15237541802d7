"""A reduced SNR sweep written to disk the way the CLI does it.

The full sweeps take several minutes; this one uses a lower sampling rate and
three seeds so it finishes in seconds. Output lands in ./sweep_demo/.

Run: python3 demos/03_small_sweep.py
"""

from tfdenoise import default_config, run_experiment, write_outputs
from tfdenoise.harness import summarize

cfg = default_config("LFM", sample_rate_hz=30.0, interval=(-3.0, 3.0),
                     snr_db_list=[-5.0, 0.0, 5.0], seeds=[1, 2, 3])
report = run_experiment(cfg)
for path in write_outputs(report, "sweep_demo"):
    print("wrote", path)

print(f"\n{'method':<20}{'snr':>6}{'mse':>10}{'psnr':>10}")
for s in sorted(summarize(report), key=lambda s: (s.snr_db, s.mse_mean)):
    print(f"{s.method:<20}{s.snr_db:>6g}{s.mse_mean:>10.3f}{s.psnr_mean:>10.2f}")
