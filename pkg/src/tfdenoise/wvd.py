"""Discrete Wigner-Ville distribution and its inversion.

Lags are taken in even steps, tau = 2 m dt, so that f(t + tau/2) and
f(t - tau/2) land on samples. The price is that the unaliased band is
[-fs/4, fs/4). With N samples there are 2N - 1 lags and, by default, as many
frequency bins, giving a frequency step of fs / (2K).

Grids keep frequencies in ascending order (fftshift layout).
"""

from __future__ import annotations

import warnings
from functools import lru_cache

import numpy as np
import scipy.fft as sfft
from scipy.sparse.linalg import LinearOperator, eigsh

from .core import (
    AliasingWarning,
    Axis,
    AxisMismatch,
    Grid2D,
    NonPSDWarning,
    NotRankOneWarning,
    Role,
    Signal,
    centered_axis,
)

ALIAS_FRACTION = 0.01
RANK_ONE_RATIO = 0.5


@lru_cache(maxsize=8)
def _lag_index(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flat positions in the N x (2N - 1) lag array with both factors in the
    window, and the sample indices p = n + m, q = n - m they multiply."""
    m = np.arange(-(n - 1), n)
    idx = np.arange(n)[:, None]
    p = idx + m[None, :]
    q = idx - m[None, :]
    ok = (p >= 0) & (p < n) & (q >= 0) & (q < n)
    flat = np.flatnonzero(ok)
    out = (flat, p[ok], q[ok])
    for a in out:
        a.setflags(write=False)
    return out


def _lag_products(x: np.ndarray) -> np.ndarray:
    """r[n, j] = x[n + m] conj(x[n - m]) for lag m = j - (N - 1), zero off-window."""
    n = x.size
    flat, p, q = _lag_index(n)
    r = np.zeros(n * (2 * n - 1), dtype=np.complex128)
    r[flat] = x[p] * np.conj(x[q])
    return r.reshape(n, 2 * n - 1)


def instantaneous_autocorrelation(f: Signal) -> Grid2D:
    """Lag products of ``f`` on the (time, lag) lattice.

    Column ``j`` holds lag tau = 2 (j - N + 1) dt. Products that reach outside the
    observation window are zero.
    """
    n = len(f)
    dt = f.dt
    return Grid2D(
        _lag_products(f.samples),
        Axis(f.t_start, dt, "s"),
        Axis(-(n - 1) * 2 * dt, 2 * dt, "s"),
        Role.CORRELATION,
    )


def aliased_fraction(f: Signal) -> float:
    """Fraction of the energy of ``f`` at |frequency| > fs/4."""
    spec = np.abs(sfft.fft(f.samples)) ** 2
    total = spec.sum()
    if total == 0:
        return 0.0
    nu = np.abs(sfft.fftfreq(len(f), d=f.dt))
    return float(spec[nu > f.sample_rate_hz / 4].sum() / total)


def n_freq_bins(n: int, pad: int = 1) -> int:
    return pad * (2 * n - 1)


def tfd_axes(f: Signal, pad: int = 1) -> tuple[Axis, Axis]:
    k = n_freq_bins(len(f), pad)
    return Axis(f.t_start, f.dt, "s"), centered_axis(k, f.sample_rate_hz / (2 * k), "Hz")


def wvd(f: Signal, pad: int = 1, check_alias: bool = True) -> Grid2D:
    """Wigner-Ville distribution of ``f`` as an N x K time-frequency grid.

    W[n, k] = 2 dt sum_m f[n+m] conj(f[n-m]) exp(-2 pi i (2 m dt) w_k), with
    K = pad * (2N - 1) frequencies w_k spaced fs / (2K) around zero.

    Args:
        f: input signal.
        pad: integer zero-padding factor on the lag axis; only refines the
            frequency sampling.
        check_alias: emit :class:`AliasingWarning` when more than 1% of the
            signal energy sits above fs/4.
    """
    if pad < 1:
        raise ValueError("pad must be >= 1")
    if check_alias and aliased_fraction(f) > ALIAS_FRACTION:
        warnings.warn(
            f"more than {ALIAS_FRACTION:.0%} of the signal energy is above fs/4; "
            "the WVD will alias", AliasingWarning, stacklevel=2,
        )
    n = len(f)
    k = n_freq_bins(n, pad)
    r = _lag_products(f.samples)
    if pad == 1:
        r_fft = sfft.ifftshift(r, axes=1)
    else:
        r_fft = np.zeros((n, k), dtype=np.complex128)
        r_fft[:, np.arange(-(n - 1), n) % k] = r
    values = sfft.fftshift(sfft.fft(r_fft, axis=1, overwrite_x=True), axes=1)
    values *= 2 * f.dt
    ax0, ax1 = tfd_axes(f, pad)
    return Grid2D(values, ax0, ax1, Role.TFD)


def wvd_energy(w: Grid2D) -> float:
    """sum |W|^2 dx dw; equals ||f||^4 for the WVD of f."""
    if w.role != Role.TFD:
        raise AxisMismatch("wvd_energy expects a TFD grid")
    return float(np.sum(np.abs(w.values) ** 2) * w.cell)


def _check_wvd_lattice(w: Grid2D) -> tuple[int, int, float]:
    if w.role != Role.TFD:
        raise AxisMismatch("reconstruct expects a TFD grid")
    n, k = w.shape
    if k < 2 * n - 1:
        raise AxisMismatch(f"need at least 2N-1={2 * n - 1} frequency bins, got {k}")
    dt = w.axis0.step
    expect = centered_axis(k, 1.0 / (2 * dt * k), "Hz")
    if not (np.isclose(w.axis1.step, expect.step, rtol=1e-9)
            and np.isclose(w.axis1.origin, expect.origin, rtol=1e-9, atol=1e-12 * expect.step)):
        raise AxisMismatch("frequency axis is not the WVD lattice of the time axis")
    return n, k, dt


def lag_grid(w: Grid2D) -> np.ndarray:
    """Invert the frequency DFT: N x (2N - 1) lag products, column j <-> m = j - N + 1."""
    n, k, dt = _check_wvd_lattice(w)
    r_fft = sfft.ifft(sfft.ifftshift(w.values, axes=1), axis=1) / (2 * dt)
    return r_fft[:, np.arange(-(n - 1), n) % k]


def outer_product_matrix(r: np.ndarray) -> np.ndarray:
    """Hermitian estimate of f f^H from lag products.

    Even-lattice entries (p + q even) come straight from r with p = n + m,
    q = n - m. Odd-lattice entries average their row neighbours (p - 1, q) and
    (p + 1, q); edges copy the one neighbour that exists. The Hermitian part of
    the result is returned.
    """
    n = r.shape[0]
    flat, _, _ = _lag_index(n)
    return outer_from_even(r.ravel()[flat], n)


def outer_from_even(vals: np.ndarray, n: int) -> np.ndarray:
    """:func:`outer_product_matrix` from the in-window lag products alone, in
    the order of ``_lag_index(n)``."""
    _, p, q = _lag_index(n)
    kmat = np.zeros((n, n), dtype=np.complex128)
    kmat.ravel()[p * n + q] = vals
    _fill_odd(kmat)
    kmat += kmat.conj().T
    kmat *= 0.5
    return kmat


def _fill_odd(kmat: np.ndarray) -> None:
    n = kmat.shape[0]
    if n < 2:
        return
    # even rows, odd columns: neighbours sit on odd rows
    src = kmat[1::2, 1::2]
    dst = kmat[0::2, 1::2]
    odd = src.shape[0]
    dst[0] = src[0]
    dst[1:odd] = 0.5 * (src[:-1] + src[1:])
    if dst.shape[0] > odd:
        dst[odd] = src[-1]
    # odd rows, even columns: neighbours sit on even rows
    src = kmat[0::2, 0::2]
    dst = kmat[1::2, 0::2]
    both = src.shape[0] - 1
    dst[:both] = 0.5 * (src[:both] + src[1:both + 1])
    if dst.shape[0] > both:
        dst[-1] = src[-1]


def power_iteration(a: np.ndarray, v0: np.ndarray | None = None, tol: float = 1e-10,
                    max_iter: int = 500) -> tuple[float, np.ndarray, int]:
    """Dominant eigenpair of a Hermitian matrix.

    Stops when ||A v - lambda v|| <= tol * |lambda|. Returns
    ``(lambda, v, iterations)`` with unit-norm ``v``.
    """
    n = a.shape[0]
    v = np.ones(n, dtype=np.complex128) if v0 is None else np.asarray(v0, dtype=np.complex128)
    nv = np.linalg.norm(v)
    if nv == 0:
        v = np.ones(n, dtype=np.complex128)
        nv = np.linalg.norm(v)
    v = v / nv
    lam = 0.0
    for it in range(1, max_iter + 1):
        av = a @ v
        lam = float(np.real(np.vdot(v, av)))
        if np.linalg.norm(av - lam * v) <= tol * abs(lam):
            return lam, v, it
        nav = np.linalg.norm(av)
        if nav == 0:
            return 0.0, v, it
        v = av / nav
    return lam, v, max_iter


def leading_eigpair(a: np.ndarray, tol: float = 1e-10, max_iter: int = 500) -> tuple[float, np.ndarray]:
    """Largest (algebraic) eigenpair of Hermitian ``a`` via power iteration."""
    diag = np.real(np.diag(a))
    v0 = a[:, int(np.argmax(diag))] if diag.max() > 0 else None
    lam, v, _ = power_iteration(a, v0, tol, max_iter)
    if lam < 0:
        # dominant eigenvalue is negative: shift the spectrum to reach the top one
        shift = -lam
        lam_s, v, _ = power_iteration(a + shift * np.eye(a.shape[0]), v0, tol, max_iter)
        lam = lam_s - shift
    return lam, v


def second_eigenvalue(a: np.ndarray, lam1: float, v1: np.ndarray, tol: float = 1e-6) -> float:
    """|lambda_2|: the largest-magnitude eigenvalue of ``a`` with the leading
    pair deflated, by Lanczos iteration on the implicit deflated operator."""
    n = a.shape[0]
    if n < 3:
        # lambda_1 is the top eigenvalue, so the other one is the bottom
        return float(abs(np.linalg.eigvalsh(a)[0])) if n == 2 else 0.0
    op = LinearOperator((n, n), matvec=lambda x: a @ x - lam1 * v1 * np.vdot(v1, x),
                        dtype=np.complex128)
    v0 = np.ones(n, dtype=np.complex128) / np.sqrt(n)
    vals = eigsh(op, k=1, which="LM", tol=tol, v0=v0, return_eigenvectors=False)
    return float(abs(vals[0]))


def align_global_phase(x: np.ndarray, ref: np.ndarray) -> np.ndarray:
    c = np.vdot(x, ref)
    return x if c == 0 else x * (c / abs(c))


def reconstruct(w_hat: Grid2D, phase_ref: Signal | None = None, tol: float = 1e-10,
                max_iter: int = 500) -> Signal:
    """Best rank-one signal estimate from a (possibly filtered) WVD grid.

    The grid is mapped back to lag products, laid out as an estimate of the
    outer product f f^H, and its leading eigenpair gives f = sqrt(lambda) v.
    The global phase is fixed against ``phase_ref`` when given, otherwise the
    largest sample is made real and positive.

    Warns :class:`NonPSDWarning` (and returns zeros) when no eigenvalue is
    positive, :class:`NotRankOneWarning` when |lambda_2| / lambda_1 > 0.5.
    """
    _, _, dt = _check_wvd_lattice(w_hat)
    return reconstruct_from_lags(lag_grid(w_hat), 1.0 / dt, w_hat.axis0.origin,
                                 phase_ref, tol, max_iter)


def reconstruct_from_lags(r: np.ndarray, fs: float, t_start: float,
                          phase_ref: Signal | None = None, tol: float = 1e-10,
                          max_iter: int = 500) -> Signal:
    """Rank-one inversion starting from an N x (2N - 1) lag-product array."""
    return reconstruct_from_outer(outer_product_matrix(r), fs, t_start, phase_ref, tol, max_iter)


def reconstruct_from_outer(kmat: np.ndarray, fs: float, t_start: float,
                           phase_ref: Signal | None = None, tol: float = 1e-10,
                           max_iter: int = 500) -> Signal:
    """Rank-one inversion of a Hermitian outer-product estimate."""
    n = kmat.shape[0]
    lam, v = leading_eigpair(kmat, tol, max_iter)
    if not lam > 0:
        warnings.warn("outer-product estimate has no positive eigenvalue", NonPSDWarning,
                      stacklevel=4)
        return Signal(np.zeros(n, dtype=np.complex128), fs, t_start)
    lam2 = second_eigenvalue(kmat, lam, v)
    if lam2 / lam > RANK_ONE_RATIO:
        warnings.warn(f"grid is far from rank one (lambda2/lambda1 = {lam2 / lam:.3f})",
                      NotRankOneWarning, stacklevel=4)
    est = np.sqrt(lam) * v
    if phase_ref is not None:
        if len(phase_ref) != n:
            raise AxisMismatch("phase reference length differs from the grid")
        est = align_global_phase(est, phase_ref.samples)
    else:
        peak = est[int(np.argmax(np.abs(est)))]
        if peak != 0:
            est = est * (abs(peak) / peak)
    return Signal(est, fs, t_start)
