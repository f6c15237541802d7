import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tfdenoise.core import AxisMismatch, Signal
from tfdenoise.metrics import MSE_FLOOR, PSNR_CAP, align_phase, mse_log10, psnr_avg

vectors = arrays(np.complex128, 8, elements=st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3,
                                                               allow_nan=False, allow_infinity=False))


def sig(x):
    return Signal(np.asarray(x), 10.0)


def test_mse_floor():
    a = sig([1 + 1j, 2, 3j])
    assert mse_log10(a, a) == np.log10(MSE_FLOOR) == -300


def test_mse_constant_offset():
    ref = sig(np.exp(1j * np.arange(6)))
    est = sig(ref.samples + 0.1)
    assert mse_log10(est, ref) == pytest.approx(-2.0, abs=1e-12)


def test_mse_is_on_complex_samples():
    ref = sig([0, 0, 0, 0])
    est = sig([1j, 1j, 1j, 1j])
    assert mse_log10(est, ref) == pytest.approx(0.0)


def test_psnr_cap():
    a = sig([1 + 1j, 2, 3j])
    assert psnr_avg(a, a) == PSNR_CAP


def test_psnr_hand_value():
    ref = sig([1 + 2j, -1 - 2j])
    est = sig([1.1 + 2j, -1 - 1.8j])
    re = 10 * np.log10(1 / (0.01 / 2))
    im = 10 * np.log10(4 / (0.04 / 2))
    assert psnr_avg(est, ref) == pytest.approx((re + im) / 2)


def test_psnr_real_reference_uses_real_part_only():
    ref = sig([1.0, -2.0, 0.5])
    est = sig([1.1 + 5j, -2.0, 0.5 - 3j])
    expect = 10 * np.log10(4 / (0.01 / 3))
    assert psnr_avg(est, ref) == pytest.approx(expect)


def test_psnr_zero_reference():
    with pytest.raises(ValueError):
        psnr_avg(sig([1, 2]), sig([0, 0]))


def test_length_mismatch():
    with pytest.raises(AxisMismatch):
        mse_log10(sig([1, 2]), sig([1, 2, 3]))


def test_align_removes_global_phase():
    ref = sig(np.exp(1j * np.linspace(0, 3, 9)) * (1 + np.arange(9)))
    est = sig(np.exp(1j * np.pi / 4) * ref.samples)
    assert np.abs(align_phase(est, ref).samples - ref.samples).max() <= 1e-12
    assert np.array_equal(align_phase(ref, ref).samples, ref.samples)


@given(vectors, vectors)
@settings(max_examples=50)
def test_align_beats_phase_sweep(e, r):
    est, ref = sig(e), sig(r)
    best = np.linalg.norm(align_phase(est, ref).samples - r)
    sweep = min(np.linalg.norm(e * np.exp(1j * th) - r) for th in np.linspace(0, 2 * np.pi, 360, endpoint=False))
    assert best <= sweep * (1 + 1e-12) + 1e-12
    assert best <= np.linalg.norm(e - r) * (1 + 1e-12) + 1e-12


@given(vectors, vectors)
def test_mse_symmetric(e, r):
    assert mse_log10(sig(e), sig(r)) == mse_log10(sig(r), sig(e))


def test_psnr_not_symmetric():
    a, b = sig([1 + 1j, 2 - 1j]), sig([3 + 0.5j, -1 + 2j])
    assert psnr_avg(a, b) != psnr_avg(b, a)


@given(vectors, vectors, st.permutations(range(8)))
def test_reindexing_invariance(e, r, perm):
    p = list(perm)
    assert mse_log10(sig(e[p]), sig(r[p])) == pytest.approx(mse_log10(sig(e), sig(r)), abs=1e-12)
    assert psnr_avg(sig(e[p]), sig(r[p])) == pytest.approx(psnr_avg(sig(e), sig(r)), abs=1e-9)
