"""Invariant checks behind the ``verify`` CLI command.

Each check returns a :class:`CheckResult`; none of them raise on a numerical
miss, so a caller can run the whole list and report every line.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .cctfd import cctfd_convolution, cctfd_integral
from .core import Grid2D, Signal, grid_l2, grid_sub
from .kernels import BORN_JORDAN, MARGENAU_HILL
from .lsaf import apply_filter, correlation, design_lsaf, min_mse, wiener_hopf_residual
from .siggen import SIGNALS, WHITE_RATES, gen_signal
from .wvd import wvd, wvd_energy

PARSEVAL_TOL = 1e-3
FORM_TOL = 1e-6
ZERO_MSE_TOL = 1e-8
ZERO_MSE_DELTAS = (0.0, 1e-16, 1e-14, 1e-12)
WIENER_HOPF_TOL = 1e-8


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def truncated_lfm(n: int = 64) -> Signal:
    """First ``n`` samples of the LFM test signal at its white-noise rate."""
    f = gen_signal("LFM", WHITE_RATES["LFM"])
    return Signal(f.samples[:n], f.sample_rate_hz, f.t_start)


def check_parseval() -> CheckResult:
    worst = 0.0
    for kind in SIGNALS:
        f = gen_signal(kind, WHITE_RATES[kind])
        e4 = f.energy() ** 2
        worst = max(worst, abs(wvd_energy(wvd(f)) - e4) / e4)
    return CheckResult("parseval", worst <= PARSEVAL_TOL, f"max relative error {worst:.2e}")


def check_form_equivalence(n: int = 64) -> CheckResult:
    f = truncated_lfm(n)
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        for spec in (MARGENAU_HILL, BORN_JORDAN):
            fast = cctfd_convolution(f, spec).values
            slow = cctfd_integral(f, spec).values
            worst = max(worst, np.abs(fast - slow).max() / np.abs(fast).max())
    return CheckResult("form-equivalence", worst <= FORM_TOL, f"max |diff| / max |C| = {worst:.2e}")


def zero_mse_errors(f: Signal, delta: float) -> tuple[float, float]:
    """(relative L2 error of the noiseless adaptive grid, min_mse / ||f||^4)."""
    w = wvd(f, check_alias=False)
    design = design_lsaf(w, w, delta)
    c = apply_filter(w, design)
    rel = grid_l2(grid_sub(c, w)) / grid_l2(w)
    return rel, min_mse(w, w, design) / f.energy() ** 2


def check_zero_mse(deltas=ZERO_MSE_DELTAS) -> CheckResult:
    failed = []
    worst_rel = worst_mse = 0.0
    for kind in SIGNALS:
        f = gen_signal(kind, WHITE_RATES[kind])
        for delta in deltas:
            rel, mse = zero_mse_errors(f, delta)
            worst_rel, worst_mse = max(worst_rel, rel), max(worst_mse, mse)
            if not (rel <= ZERO_MSE_TOL and mse <= ZERO_MSE_TOL):
                failed.append(f"{kind}@{delta:g} rel={rel:.1e}")
    detail = f"worst relative error {worst_rel:.2e}, worst min_mse/||f||^4 {worst_mse:.2e}"
    if failed:
        detail += "; failing: " + ", ".join(failed)
    return CheckResult("zero-min-mse", not failed, detail)


def noisy_grid_case(n: int = 64, scale: float = 0.3, seed: int = 4) -> tuple[Grid2D, Grid2D]:
    """Clean WVD and a copy with complex Gaussian noise added on the grid.

    The signal WVD lattice leaves half its lag columns empty, so a noisy grid
    (not a noisy signal) is what gives a PSD that is positive everywhere.
    """
    w_f = wvd(truncated_lfm(n), check_alias=False)
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(w_f.shape) + 1j * rng.standard_normal(w_f.shape)
    return w_f, w_f.with_values(w_f.values + scale * noise)


def check_wiener_hopf() -> CheckResult:
    w_f, w_g = noisy_grid_case()
    rel = wiener_hopf_residual(w_f, w_g, design_lsaf(w_f, w_g, 0.0)) / grid_l2(correlation(w_f, w_g))
    return CheckResult("wiener-hopf", rel <= WIENER_HOPF_TOL, f"relative residual {rel:.2e}")


CHECKS = (check_parseval, check_form_equivalence, check_zero_mse, check_wiener_hopf)


def run_all() -> list[CheckResult]:
    return [check() for check in CHECKS]
