"""Report metrics: log10 MSE on complex samples and PSNR averaged over the real
and imaginary parts."""

from __future__ import annotations

import numpy as np

from .core import AxisMismatch, Signal

MSE_FLOOR = 1e-300
PSNR_CAP = 300.0


def _pair(est: Signal, ref: Signal) -> tuple[np.ndarray, np.ndarray]:
    if len(est) != len(ref):
        raise AxisMismatch(f"length {len(est)} != {len(ref)}")
    return est.samples, ref.samples


def mse_log10(est: Signal, ref: Signal) -> float:
    e, r = _pair(est, ref)
    return float(np.log10(max(np.mean(np.abs(e - r) ** 2), MSE_FLOOR)))


def _psnr(e: np.ndarray, r: np.ndarray) -> float:
    mse = np.mean((e - r) ** 2)
    if mse == 0:
        return PSNR_CAP
    return float(min(10 * np.log10(np.max(np.abs(r)) ** 2 / mse), PSNR_CAP))


def psnr_avg(est: Signal, ref: Signal) -> float:
    """Mean of the real-part and imaginary-part PSNRs (dB).

    The peak is the largest magnitude of the reference's part. A part whose
    reference is identically zero is left out.
    """
    e, r = _pair(est, ref)
    parts = [(e.real, r.real), (e.imag, r.imag)]
    vals = [_psnr(pe, pr) for pe, pr in parts if np.max(np.abs(pr)) > 0]
    if not vals:
        raise ValueError("reference signal is identically zero")
    return float(np.mean(vals))


def align_phase(est: Signal, ref: Signal) -> Signal:
    """est * exp(i psi) with psi chosen to maximise Re <ref, est exp(i psi)>."""
    e, r = _pair(est, ref)
    c = np.vdot(e, r)
    if c == 0:
        return est
    return est.with_samples(e * (c / abs(c)))
