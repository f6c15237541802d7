"""Command-line entry point.

Exit codes: 0 success, 2 invalid input or configuration, 3 a numerical guard
tripped (degenerate spectrum, non-PSD reconstruction, failed invariant).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from .cctfd import cctfd_convolution, denoise_via_kernel
from .core import (
    METHODS,
    NOISE_KINDS,
    SIGNAL_KINDS,
    InvalidConfig,
    NonPSDWarning,
    Role,
    TFDError,
    read_grid,
    read_signal_csv,
    write_grid,
    write_signal_csv,
)
from .harness import load_configs, run_experiments, write_outputs
from .kernels import KernelKind, KernelSpec
from .lsaf import DEFAULT_DELTA, adaptive_cctfd, denoise_lsaf, wiener_1d
from .metrics import align_phase, mse_log10, psnr_avg
from .siggen import DEFAULT_INTERVAL, add_noise, gen_signal
from .verify import run_all
from .wvd import wvd

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3


class NumericalGuard(Exception):
    pass


def _kernel(arg: str) -> KernelSpec:
    if arg.lower() in {k.value for k in KernelKind if k is not KernelKind.CUSTOM}:
        return KernelSpec.named(arg)
    path = Path(arg)
    if not path.is_file():
        raise InvalidConfig(f"--kernel must be a kernel name or a TFDG file, got {arg!r}")
    grid = read_grid(path)
    if grid.role != Role.KERNEL:
        raise InvalidConfig(f"{arg} does not hold a kernel grid")
    return KernelSpec.custom(grid)


def cmd_gen_signal(a) -> int:
    write_signal_csv(a.out, gen_signal(a.kind, a.fs, (a.t0, a.t1)))
    return EXIT_OK


def cmd_add_noise(a) -> int:
    write_signal_csv(a.out, add_noise(read_signal_csv(a.inp), a.color, a.snr_db, a.seed))
    return EXIT_OK


def cmd_wvd(a) -> int:
    write_grid(a.out, wvd(read_signal_csv(a.inp)))
    return EXIT_OK


def cmd_cctfd(a) -> int:
    write_grid(a.out, cctfd_convolution(read_signal_csv(a.inp), _kernel(a.kernel)))
    return EXIT_OK


def cmd_adaptive(a) -> int:
    write_grid(a.out, adaptive_cctfd(read_signal_csv(a.clean), read_signal_csv(a.noisy), a.delta))
    return EXIT_OK


def cmd_denoise(a) -> int:
    f = read_signal_csv(a.clean)
    g = read_signal_csv(a.noisy)
    with warnings.catch_warnings():
        warnings.simplefilter("error", NonPSDWarning)
        if a.method == "adaptive-cctfd":
            est = denoise_lsaf(f, g, a.delta)
        elif a.method == "wiener-1d":
            est = wiener_1d(f, g, a.delta)
        else:
            est = denoise_via_kernel(g, KernelSpec.named(a.method), phase_ref=f)
    est = align_phase(est, f)
    write_signal_csv(a.out, est)
    metrics = {"method": a.method, "mse_log10": mse_log10(est, f), "psnr_db": psnr_avg(est, f)}
    print(json.dumps(metrics))
    return EXIT_OK


def cmd_experiment(a) -> int:
    if a.threads < 1:
        raise InvalidConfig("--threads must be >= 1")
    report = run_experiments(load_configs(a.config), threads=a.threads)
    for path in write_outputs(report, a.out_dir):
        print(path)
    return EXIT_OK


def cmd_verify(a) -> int:
    results = run_all()
    for r in results:
        print(r.line())
    if not all(r.passed for r in results):
        raise NumericalGuard("invariant check failed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tfdenoise", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen-signal", help="sample a test signal to CSV")
    s.add_argument("--kind", required=True, choices=SIGNAL_KINDS)
    s.add_argument("--fs", required=True, type=float)
    s.add_argument("--t0", type=float, default=DEFAULT_INTERVAL[0])
    s.add_argument("--t1", type=float, default=DEFAULT_INTERVAL[1])
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen_signal)

    s = sub.add_parser("add-noise", help="add seeded noise at a given SNR")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--color", default="white", choices=NOISE_KINDS)
    s.add_argument("--snr-db", required=True, type=float)
    s.add_argument("--seed", required=True, type=int)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_add_noise)

    s = sub.add_parser("wvd", help="Wigner-Ville distribution to a TFDG file")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_wvd)

    s = sub.add_parser("cctfd", help="fixed-kernel distribution to a TFDG file")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--kernel", required=True, help="kernel name or a Kernel-role TFDG file")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_cctfd)

    s = sub.add_parser("adaptive-cctfd", help="least-squares filtered WVD to a TFDG file")
    s.add_argument("--clean", required=True)
    s.add_argument("--noisy", required=True)
    s.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_adaptive)

    s = sub.add_parser("denoise", help="denoise a signal and print metrics as JSON")
    s.add_argument("--clean", required=True)
    s.add_argument("--noisy", required=True)
    s.add_argument("--method", required=True, choices=METHODS)
    s.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_denoise)

    s = sub.add_parser("experiment", help="run a JSON experiment config")
    s.add_argument("--config", required=True)
    s.add_argument("--out-dir", required=True)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("verify", help="run the invariant checks")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NumericalGuard, NonPSDWarning, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (TFDError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
