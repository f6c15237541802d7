import warnings

import numpy as np
import pytest

from tfdenoise.cctfd import denoise_via_kernel
from tfdenoise.core import Signal
from tfdenoise.harness import _SignalContext, default_config, estimate
from tfdenoise.kernels import KernelSpec
from tfdenoise.lagdomain import (
    LagPlan,
    even_lags_from_spectrum,
    lag_products,
    lags_from_spectrum,
    real_part_lags,
    spectrum_from_lags,
)
from tfdenoise.lsaf import denoise_lsaf
from tfdenoise.siggen import awgn
from tfdenoise.wvd import _lag_index, lag_grid, wvd


@pytest.fixture(autouse=True)
def _quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        yield


def random_signal(n, seed):
    rng = np.random.default_rng(seed)
    return Signal(rng.standard_normal(n) + 1j * rng.standard_normal(n), 7.0, -1.0)


@pytest.mark.parametrize("n", [2, 3, 8, 17, 40])
def test_spectrum_is_fft2_of_wvd(n):
    f = random_signal(n, n)
    plan = LagPlan.for_signal(f)
    spec = spectrum_from_lags(lag_products(f), plan)
    assert np.allclose(spec, np.fft.fft2(wvd(f).values), atol=1e-12 * np.abs(spec).max())


@pytest.mark.parametrize("n", [3, 8, 17])
def test_inverse_matches_grid_lags(n):
    rng = np.random.default_rng(n)
    plan = LagPlan.for_signal(random_signal(n, 0))
    w = wvd(random_signal(n, 0))
    x = rng.standard_normal(w.shape) + 1j * rng.standard_normal(w.shape)
    c = w.with_values(np.fft.ifft2(x))
    r = lags_from_spectrum(x, plan)
    assert np.allclose(r, lag_grid(c), atol=1e-12)
    re = real_part_lags(r)
    assert np.allclose(re, lag_grid(c.with_values(c.values.real)), atol=1e-12)
    flat, _, _ = _lag_index(n)
    xw = x * plan.inverse_weight[None, :]
    assert np.allclose(even_lags_from_spectrum(xw.copy(), plan), r.ravel()[flat], atol=1e-12)
    assert np.allclose(even_lags_from_spectrum(xw.copy(), plan, real=True), re.ravel()[flat], atol=1e-12)


@pytest.mark.parametrize("method", ["margenau-hill", "kirkwood-rihaczek", "born-jordan", "page", "adaptive-cctfd"])
def test_harness_path_matches_grid_route(method):
    cfg = default_config("LFM", sample_rate_hz=12.0, interval=(-3.0, 3.0))
    ctx = _SignalContext(cfg)
    g = awgn(ctx.f, 0.0, 5)
    spec_g = spectrum_from_lags(lag_products(g), ctx.plan)
    fast = estimate(method, ctx, g, spec_g, cfg.delta).samples
    if method == "adaptive-cctfd":
        slow = denoise_lsaf(ctx.f, g, cfg.delta).samples
    else:
        slow = denoise_via_kernel(g, KernelSpec.named(method), phase_ref=ctx.f).samples
    assert np.abs(fast - slow).max() <= 1e-8 * np.abs(slow).max()
