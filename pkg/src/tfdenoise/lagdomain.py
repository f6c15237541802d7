"""Lag-domain evaluation of the grid pipelines.

A WVD grid and its time-lag product array are one frequency DFT apart, so the
2-D DFT of a WVD is a time-axis DFT of the lag products with the lag axis
reversed and a phase ramp applied. Filtering in the 2-D DFT domain and going
back to lag products for reconstruction therefore never needs a DFT of
length 2N - 1. The results equal the grid route to rounding error; the
experiment harness uses this path for speed.

Only the unpadded lattice (K = 2N - 1) is supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.fft as sfft

from .core import Signal
from .wvd import _lag_index, _lag_products


@dataclass(frozen=True)
class LagPlan:
    n: int
    dt: float
    phase: np.ndarray  # exp(-2 pi i l M / K)
    lag_cols: np.ndarray  # lag column holding m = -l mod K, for each spectral column l

    @classmethod
    def for_signal(cls, f: Signal) -> "LagPlan":
        n = len(f)
        k = 2 * n - 1
        m_max = n - 1
        l = np.arange(k)
        phase = np.exp(-2j * np.pi * l * m_max / k)
        lag_cols = ((-l + m_max) % k)
        return cls(n, f.dt, phase, lag_cols)

    @property
    def k(self) -> int:
        return 2 * self.n - 1

    @cached_property
    def inverse_weight(self) -> np.ndarray:
        """Per-column factor folding the phase ramp and scale of
        :func:`lags_from_spectrum` into a spectral multiplier."""
        return np.conj(self.phase) / (2 * self.dt * self.k)

    @cached_property
    def even_index(self) -> tuple[np.ndarray, np.ndarray]:
        """Flat positions, in the time-DFT column array, of the in-window lag
        products (order of ``_lag_index``) and of their lag-mirrored partners."""
        flat, _, _ = _lag_index(self.n)
        row, j = np.divmod(flat, self.k)
        m_max = self.n - 1
        direct = row * self.k + (m_max - j) % self.k
        mirror = row * self.k + (j - m_max) % self.k
        return direct, mirror


def lag_products(f: Signal) -> np.ndarray:
    return _lag_products(f.samples)


def spectrum_from_lags(r: np.ndarray, plan: LagPlan) -> np.ndarray:
    """Unweighted ``fft2`` of the WVD grid whose lag products are ``r``."""
    s = sfft.fft(r[:, plan.lag_cols], axis=0)
    s *= (2 * plan.dt * plan.k) * plan.phase[None, :]
    return s


def lags_from_spectrum(x: np.ndarray, plan: LagPlan) -> np.ndarray:
    """Lag products of ``ifft2(x)`` read as a WVD grid."""
    cols = sfft.ifft(x * np.conj(plan.phase)[None, :], axis=0)
    r = np.empty_like(cols)
    r[:, plan.lag_cols] = cols
    r /= 2 * plan.dt * plan.k
    return r


def even_lags_from_spectrum(xw: np.ndarray, plan: LagPlan, real: bool = False) -> np.ndarray:
    """In-window lag products of ``ifft2(x)``, given ``xw = x * plan.inverse_weight``.

    With ``real`` the products belong to Re(ifft2(x)). The output feeds
    :func:`tfdenoise.wvd.outer_from_even` directly. ``xw`` may be overwritten.
    """
    cols = sfft.ifft(xw, axis=0, overwrite_x=True).ravel()
    direct, mirror = plan.even_index
    vals = cols[direct]
    if real:
        vals += np.conj(cols[mirror])
        vals *= 0.5
    return vals


def real_part_lags(r: np.ndarray) -> np.ndarray:
    """Lag products of Re(C) given those of C."""
    return 0.5 * (r + np.conj(r[:, ::-1]))
