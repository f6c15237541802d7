"""Cohen's-class distributions: the fast convolution form and a brute-force
integral form kept as an oracle for small signals."""

from __future__ import annotations

import numpy as np
import scipy.fft as sfft

from .core import Grid2D, Role, Signal, SizeLimit
from .kernels import KernelSpec, kernel_response, sample_kernel
from .wvd import instantaneous_autocorrelation, reconstruct, wvd

INTEGRAL_MAX_N = 128


def convolve_tfd(w: Grid2D, spec: KernelSpec, w_spectrum: np.ndarray | None = None) -> Grid2D:
    """Circular 2-D convolution ``(W * Pi) dx dw`` done in the DFT domain.

    ``w_spectrum`` may carry a precomputed ``fft2(w.values)`` to share between
    several kernels.
    """
    spec_w = sfft.fft2(w.values) if w_spectrum is None else w_spectrum
    return w.with_values(sfft.ifft2(spec_w * kernel_response(spec, w), overwrite_x=True))


def cctfd_convolution(f: Signal, spec: KernelSpec) -> Grid2D:
    """C_f = W_f * Pi on the WVD lattice of ``f``."""
    return convolve_tfd(wvd(f), spec)


def cctfd_integral(f: Signal, spec: KernelSpec) -> Grid2D:
    """Direct quadrature of the triple-integral definition.

    C(x, w) = sum_theta sum_tau sum_y f(y + tau/2) conj(f(y - tau/2)) phi(theta, tau)
    exp(-2 pi i (theta x + tau w - y theta)) dy dtau dtheta

    evaluated with explicit exponentials on the same lattice as
    :func:`cctfd_convolution` (no FFTs). Limited to N <= 128.
    """
    n = len(f)
    if n > INTEGRAL_MAX_N:
        raise SizeLimit(f"integral form is an oracle for N <= {INTEGRAL_MAX_N}, got {n}")
    target = wvd(f, check_alias=False)
    x, w = target.coords()
    phi = sample_kernel(spec, target)
    theta, tau = phi.coords()
    y = f.times
    r = instantaneous_autocorrelation(f).values  # (y, tau)
    # inner sum over y gives the ambiguity function A(theta, tau)
    amb = np.exp(2j * np.pi * np.outer(theta, y)) @ r * f.dt
    weighted = amb * phi.values * phi.cell
    out = np.exp(-2j * np.pi * np.outer(x, theta)) @ weighted @ np.exp(-2j * np.pi * np.outer(tau, w))
    return target.with_values(out)


def denoise_via_kernel(g: Signal, spec: KernelSpec, phase_ref: Signal | None = None,
                       w_g: Grid2D | None = None, w_spectrum: np.ndarray | None = None) -> Signal:
    """Smooth the WVD of ``g`` with a fixed kernel and invert to a signal.

    Complex distributions are reduced to their real part first; reconstruction
    then works from the Hermitian part of the implied outer-product matrix.
    """
    w = wvd(g) if w_g is None else w_g
    c = convolve_tfd(w, spec, w_spectrum)
    c = c.with_values(c.values.real.astype(np.complex128))
    return reconstruct(c, phase_ref)
