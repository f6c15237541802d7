"""Least-squares adaptive filtering in the WVD domain.

The filter works on the 2-D DFT of WVD grids. With F the Riemann-weighted 2-D
DFT, the cross spectrum of two grids is eps_AB = F[A] conj(F[B]) and the
optimal transfer function is eps_fg / eps_g. Filtering is a product in the DFT
domain, i.e. a circular convolution on the time-frequency lattice.

Spectrum-role grids are stored in fftshift order on the lattice dual to the
source grid (doppler in Hz along rows, lag in seconds along columns).

The design needs the clean WVD (reference-aided); there is no blind mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft

from .core import (
    AxisMismatch,
    DegenerateInput,
    Grid2D,
    Role,
    Signal,
    centered_axis,
    check_compatible,
    grid_l2,
)
from .kernels import ambiguity_axes, reverse_fft_order
from .wvd import reconstruct, wvd, wvd_energy

DEFAULT_DELTA = 1e-12


def _spectrum(a: Grid2D) -> np.ndarray:
    """Riemann-weighted 2-D DFT in fft order (origin phase omitted; it cancels
    in every product used here)."""
    return sfft.fft2(a.values) * a.cell


def _spectrum_grid(values_fft: np.ndarray, source: Grid2D) -> Grid2D:
    a0, a1 = ambiguity_axes(source)
    return Grid2D(sfft.fftshift(values_fft), a0, a1, Role.SPECTRUM)


def _check_tfd_pair(a: Grid2D, b: Grid2D) -> None:
    check_compatible(a, b)
    if a.role != Role.TFD:
        raise AxisMismatch("expected TFD grids")


@dataclass(frozen=True)
class FilterDesign:
    """Transfer function F[H_opt] on the spectral lattice of the source grids."""

    transfer: Grid2D
    delta: float
    source_dims: tuple[int, int]

    def __post_init__(self):
        if self.transfer.role != Role.SPECTRUM:
            raise AxisMismatch("transfer must be a Spectrum grid")
        if self.transfer.shape != tuple(self.source_dims):
            raise AxisMismatch("transfer dims differ from source dims")

    def transfer_fft(self) -> np.ndarray:
        return sfft.ifftshift(self.transfer.values)


def cross_psd(a: Grid2D, b: Grid2D) -> Grid2D:
    """eps_AB(u) = F[A](u) conj(F[B](u))."""
    _check_tfd_pair(a, b)
    fa = _spectrum(a)
    if b is a or np.array_equal(a.values, b.values):
        # exactly real for an auto spectrum
        return _spectrum_grid((np.abs(fa) ** 2).astype(np.complex128), a)
    return _spectrum_grid(fa * np.conj(_spectrum(b)), a)


def _transfer(fa: np.ndarray, fb: np.ndarray, delta: float) -> np.ndarray:
    eps_g = np.abs(fb) ** 2
    peak = eps_g.max()
    if peak == 0:
        raise DegenerateInput("noisy WVD has an identically zero spectrum")
    denom = eps_g + delta * peak
    num = fa * np.conj(fb)
    return np.divide(num, denom, out=np.zeros_like(num), where=denom > 0)


def design_lsaf(w_f: Grid2D, w_g: Grid2D, delta: float = DEFAULT_DELTA) -> FilterDesign:
    """Transfer eps_fg / (eps_g + delta max eps_g); bins with a zero denominator get 0."""
    _check_tfd_pair(w_f, w_g)
    if not delta >= 0:
        raise ValueError("delta must be >= 0")
    t = _transfer(_spectrum(w_f), _spectrum(w_g), delta)
    return FilterDesign(_spectrum_grid(t, w_g), float(delta), w_g.shape)


def apply_filter(w_g: Grid2D, design: FilterDesign) -> Grid2D:
    if w_g.shape != tuple(design.source_dims) or w_g.role != Role.TFD:
        raise AxisMismatch("grid does not match the filter design")
    return w_g.with_values(sfft.ifft2(sfft.fft2(w_g.values) * design.transfer_fft()))


def lsaf_impulse_response(design: FilterDesign) -> Grid2D:
    """H_opt(z) on the centred offset lattice: inverse transform of the transfer."""
    t = design.transfer
    n, k = t.shape
    dx = 1.0 / (n * t.axis0.step)
    dw = 1.0 / (k * t.axis1.step)
    h = sfft.fftshift(sfft.ifft2(design.transfer_fft())) / (dx * dw)
    return Grid2D(h, centered_axis(n, dx, "s"), centered_axis(k, dw, "Hz"), Role.TFD)


def optimal_kernel(design: FilterDesign) -> Grid2D:
    """phi_opt(theta, tau) = F[H_opt](-theta, -tau) by modular index reversal."""
    phi = sfft.fftshift(reverse_fft_order(design.transfer_fft()))
    t = design.transfer
    return Grid2D(phi, t.axis0, t.axis1, Role.KERNEL)


def adaptive_cctfd(f_ref: Signal, g: Signal, delta: float = DEFAULT_DELTA) -> Grid2D:
    """Noisy WVD filtered by the least-squares design built against ``f_ref``."""
    if not f_ref.same_lattice(g):
        raise AxisMismatch("clean and noisy signals must share length, rate and start")
    w_g = wvd(g, check_alias=False)
    return apply_filter(w_g, design_lsaf(wvd(f_ref, check_alias=False), w_g, delta))


def min_mse(w_f: Grid2D, w_g: Grid2D, design: FilterDesign) -> float:
    """Squared L2 error of ``apply_filter(w_g, design)`` against ``w_f`` in closed form.

    ||f||^4 - sum_u [2 Re(T eps_gf) - |T|^2 eps_g] du, with ||f||^4 taken as the
    WVD energy. For the unregularised optimum T = eps_fg / eps_g the bracket
    collapses to |eps_fg|^2 / eps_g.
    """
    _check_tfd_pair(w_f, w_g)
    if w_g.shape != tuple(design.source_dims):
        raise AxisMismatch("grid does not match the filter design")
    fa, fb = _spectrum(w_f), _spectrum(w_g)
    t = design.transfer_fft()
    du = 1.0 / (w_f.shape[0] * w_f.shape[1] * w_f.cell)
    gain = 2 * np.real(t * fb * np.conj(fa)) - np.abs(t) ** 2 * np.abs(fb) ** 2
    return float(wvd_energy(w_f) - gain.sum() * du)


def correlation(a: Grid2D, b: Grid2D) -> Grid2D:
    """Circular cross-correlation R_AB(p) = sum_z A(z) conj(B(z - p)) dz."""
    _check_tfd_pair(a, b)
    return _lag_grid(_spectrum(a) * np.conj(_spectrum(b)), a)


def _lag_grid(spec_fft: np.ndarray, source: Grid2D) -> Grid2D:
    n, k = source.shape
    vals = sfft.fftshift(sfft.ifft2(spec_fft)) / source.cell
    return Grid2D(vals, centered_axis(n, source.axis0.step, "s"),
                  centered_axis(k, source.axis1.step, "s"), Role.CORRELATION)


def wiener_hopf_residual(w_f: Grid2D, w_g: Grid2D, design: FilterDesign) -> float:
    """L2 norm over the lag lattice of R_fg - R_g * H_opt.

    Uses the correlation and convolution theorems, so the residual spectrum is
    eps_fg - eps_g T.
    """
    _check_tfd_pair(w_f, w_g)
    fa, fb = _spectrum(w_f), _spectrum(w_g)
    resid = fa * np.conj(fb) - np.abs(fb) ** 2 * design.transfer_fft()
    return grid_l2(_lag_grid(resid, w_f))


def denoise_lsaf(f_ref: Signal, g: Signal, delta: float = DEFAULT_DELTA) -> Signal:
    return reconstruct(adaptive_cctfd(f_ref, g, delta), phase_ref=f_ref)


def wiener_1d(f_ref: Signal, g: Signal, delta: float = DEFAULT_DELTA) -> Signal:
    """The same least-squares construction on the 1-D signal spectrum."""
    if not f_ref.same_lattice(g):
        raise AxisMismatch("clean and noisy signals must share length, rate and start")
    fr = sfft.fft(f_ref.samples)
    fg = sfft.fft(g.samples)
    return g.with_samples(sfft.ifft(_transfer(fr, fg, delta) * fg))
