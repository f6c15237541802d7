"""Fixed Cohen kernels on the doppler-lag plane and their 2-D Fourier transforms.

The kernels are used exactly as written for the experiments, with theta in Hz
and tau in seconds:

    margenau-hill      cos(theta tau / 2)
    kirkwood-rihaczek  exp(i theta tau / 2)
    born-jordan        sin(theta tau / 2) / (theta tau / 2)
    page               exp(i theta |tau|)

All sampling happens on the lattice dual to a WVD grid: doppler step
1 / (N dx) and lag step 1 / (K dw) = 2 dt, both in fftshift order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.fft as sfft

from .core import AxisMismatch, Grid2D, Role, centered_axis


class KernelKind(str, enum.Enum):
    MARGENAU_HILL = "margenau-hill"
    KIRKWOOD_RIHACZEK = "kirkwood-rihaczek"
    BORN_JORDAN = "born-jordan"
    PAGE = "page"
    CUSTOM = "custom"


@dataclass(frozen=True)
class KernelSpec:
    kind: KernelKind
    grid: Grid2D | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", KernelKind(self.kind))
        if self.kind is KernelKind.CUSTOM:
            if self.grid is None or self.grid.role != Role.KERNEL:
                raise ValueError("a custom kernel needs a Kernel-role grid")
        elif self.grid is not None:
            raise ValueError("only custom kernels carry a grid")

    @classmethod
    def custom(cls, grid: Grid2D) -> "KernelSpec":
        return cls(KernelKind.CUSTOM, grid)

    @classmethod
    def named(cls, name: str) -> "KernelSpec":
        return cls(KernelKind(name.lower().replace("_", "-")))


MARGENAU_HILL = KernelSpec(KernelKind.MARGENAU_HILL)
KIRKWOOD_RIHACZEK = KernelSpec(KernelKind.KIRKWOOD_RIHACZEK)
BORN_JORDAN = KernelSpec(KernelKind.BORN_JORDAN)
PAGE = KernelSpec(KernelKind.PAGE)
FIXED_KERNELS = (MARGENAU_HILL, KIRKWOOD_RIHACZEK, BORN_JORDAN, PAGE)


def _analytic(kind: KernelKind, theta, tau):
    theta = np.asarray(theta, dtype=float)
    tau = np.asarray(tau, dtype=float)
    half = theta * tau / 2
    if kind is KernelKind.MARGENAU_HILL:
        return np.cos(half) + 0j
    if kind is KernelKind.KIRKWOOD_RIHACZEK:
        return np.exp(1j * half)
    if kind is KernelKind.BORN_JORDAN:
        # np.sinc(x) = sin(pi x)/(pi x) with the removable point set to 1
        return np.sinc(half / np.pi) + 0j
    if kind is KernelKind.PAGE:
        return np.exp(1j * theta * np.abs(tau))
    raise ValueError(f"no closed form for {kind}")


def eval_kernel(spec: KernelSpec, theta, tau):
    """Kernel value(s) at doppler ``theta`` (Hz) and lag ``tau`` (s).

    Custom grids answer only on their own lattice; anything else raises
    ``ValueError``.
    """
    if spec.kind is not KernelKind.CUSTOM:
        out = _analytic(spec.kind, theta, tau)
        return complex(out) if out.ndim == 0 else out
    g = spec.grid
    th, ta = np.broadcast_arrays(np.asarray(theta, float), np.asarray(tau, float))
    i = (th - g.axis0.origin) / g.axis0.step
    j = (ta - g.axis1.origin) / g.axis1.step
    ii, jj = np.rint(i).astype(int), np.rint(j).astype(int)
    on = (np.abs(i - ii) < 1e-6) & (np.abs(j - jj) < 1e-6)
    on &= (ii >= 0) & (ii < g.shape[0]) & (jj >= 0) & (jj < g.shape[1])
    if not np.all(on):
        raise ValueError("custom kernel evaluated off its lattice")
    out = g.values[ii, jj]
    return complex(out) if out.ndim == 0 else out


def _dual_lattice(n: int, k: int, dx: float, dw: float):
    a0 = centered_axis(n, 1.0 / (n * dx), "Hz")
    a1 = centered_axis(k, 1.0 / (k * dw), "s")
    return a0, a1


def ambiguity_axes(target: Grid2D):
    """(doppler, lag) axes dual to the (time, frequency) axes of ``target``."""
    return _dual_lattice(*target.shape, target.axis0.step, target.axis1.step)


def sample_kernel(spec: KernelSpec, target: Grid2D) -> Grid2D:
    """Kernel values on the doppler-lag lattice of ``target`` (fftshift order)."""
    if target.role != Role.TFD:
        raise AxisMismatch("kernel sampling needs a TFD target grid")
    a0, a1 = ambiguity_axes(target)
    if spec.kind is KernelKind.CUSTOM:
        g = spec.grid
        if g.shape != target.shape or not (g.axis0.close_to(a0) and g.axis1.close_to(a1)):
            raise AxisMismatch("custom kernel lattice does not match the target grid")
        return g
    n, k = target.shape
    theta = a0.values(n)[:, None]
    tau = a1.values(k)[None, :]
    return Grid2D(_analytic(spec.kind, theta, tau), a0, a1, Role.KERNEL)


def reverse_fft_order(a: np.ndarray) -> np.ndarray:
    """b[i, j] = a[-i mod n, -j mod k]."""
    return np.roll(np.flip(a, axis=(0, 1)), 1, axis=(0, 1))


def _transform(phi: np.ndarray, cell: float) -> np.ndarray:
    return sfft.fftshift(sfft.fft2(sfft.ifftshift(phi))) * cell


def kernel_transform(spec: KernelSpec, target: Grid2D) -> Grid2D:
    """Pi = F[phi] on the (time offset, frequency offset) lattice of ``target``.

    Pi[n, k] = dtheta dtau sum_ij phi(theta_i, tau_j)
    exp(-2 pi i (theta_i x_n + tau_j w_k)), where x_n = n dx and w_k = k dw are
    offsets centred on zero. With phi = 1 this is a unit-mass delta,
    1 / (dx dw) at the origin.
    """
    phi = sample_kernel(spec, target)
    n, k = target.shape
    return Grid2D(_transform(phi.values, phi.cell), centered_axis(n, target.axis0.step, "s"),
                  centered_axis(k, target.axis1.step, "Hz"), Role.TFD)


def _response(pi: np.ndarray, cell: float) -> np.ndarray:
    return sfft.fft2(sfft.ifftshift(pi), overwrite_x=True) * cell


@lru_cache(maxsize=4)
def fixed_kernel_response(kind: KernelKind, n: int, k: int, dx: float, dw: float) -> np.ndarray:
    a0, a1 = _dual_lattice(n, k, dx, dw)
    phi = _analytic(kind, a0.values(n)[:, None], a1.values(k)[None, :])
    resp = _response(_transform(phi, a0.step * a1.step), dx * dw)
    resp.setflags(write=False)
    return resp


def kernel_response(spec: KernelSpec, target: Grid2D) -> np.ndarray:
    """DFT-domain multiplier (fft order) that realises ``(W * Pi) dx dw`` on the
    lattice of ``target``. Fixed kernels are cached per lattice."""
    if spec.kind is KernelKind.CUSTOM:
        return _response(kernel_transform(spec, target).values, target.cell)
    n, k = target.shape
    return fixed_kernel_response(spec.kind, n, k, target.axis0.step, target.axis1.step)
