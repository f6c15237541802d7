"""Test chirps and noise models.

Noise is drawn from ``numpy.random.default_rng(seed)`` (PCG64), so a given seed
gives bit-identical output across runs. Noise is complex circular Gaussian and
is rescaled after drawing so the requested SNR holds exactly.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.fft as sfft

from .core import InvalidConfig, Signal

# white-noise and colored-noise sampling rates for LFM, GELFM, QFM, SFM
WHITE_RATES = {"LFM": 80.0, "GELFM": 100.0, "QFM": 150.0, "SFM": 175.0}
COLORED_RATES = {"LFM": 30.0, "GELFM": 50.0, "QFM": 150.0, "SFM": 150.0}
DEFAULT_INTERVAL = (-5.0, 5.0)

# PSD exponent: noise power ~ |nu|**exponent
COLOR_EXPONENTS = {"white": 0.0, "pink": -1.0, "blue": 1.0, "red": -2.0}


def _lfm(x):
    return np.exp(2j * np.pi * (x + x**2 / 2))


def _gelfm(x):
    return np.exp(-((x + 1) ** 2) / 8) * np.exp(2j * np.pi * x**2)


def _qfm(x):
    return np.exp(2j * np.pi * (-3 * x + x**2 / 2 + x**3 / 4))


def _sfm(x):
    return np.exp(1j * (1.3 * np.pi * x + 2 * np.sin(0.6 * np.pi * x)))


SIGNALS = {"LFM": _lfm, "GELFM": _gelfm, "QFM": _qfm, "SFM": _sfm}


def sample_count(fs: float, interval: tuple[float, float]) -> int:
    span = (interval[1] - interval[0]) * fs
    n = round(span)
    return int(n) if math.isclose(span, n, rel_tol=0, abs_tol=1e-9) else math.ceil(span)


def gen_signal(kind: str, fs: float, interval: tuple[float, float] = DEFAULT_INTERVAL) -> Signal:
    """Sample one of the test signals on the right-open interval [t0, t1)."""
    if kind not in SIGNALS:
        raise InvalidConfig(f"unknown signal kind {kind!r}; choose from {list(SIGNALS)}")
    if not fs > 0 or not interval[0] < interval[1]:
        raise InvalidConfig("need fs > 0 and t0 < t1")
    t = interval[0] + np.arange(sample_count(fs, interval)) / fs
    return Signal(SIGNALS[kind](t), fs, interval[0])


def _scale_to_snr(f: Signal, noise: np.ndarray, snr_db: float) -> Signal:
    p_sig = np.sum(np.abs(f.samples) ** 2)
    p_noise = np.sum(np.abs(noise) ** 2)
    if p_noise == 0:
        return f
    noise = noise * np.sqrt(p_sig / (p_noise * 10 ** (snr_db / 10)))
    return f.with_samples(f.samples + noise)


def _white(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2)


def awgn(f: Signal, snr_db: float, seed: int) -> Signal:
    """f plus complex white Gaussian noise at exactly ``snr_db``. ``inf`` returns f."""
    if math.isinf(snr_db) and snr_db > 0:
        return f
    if math.isnan(snr_db):
        raise InvalidConfig("snr_db is NaN")
    rng = np.random.default_rng(seed)
    return _scale_to_snr(f, _white(rng, len(f)), snr_db)


def colored_noise(f: Signal, color: str, snr_db: float, seed: int) -> Signal:
    """f plus spectrally shaped Gaussian noise.

    A white draw is shaped in the DFT domain by |nu|**(exponent/2), where the
    PSD exponent is -1 (pink), +1 (blue) or -2 (red); the DC bin is zeroed.
    """
    if color == "white":
        return awgn(f, snr_db, seed)
    if color not in COLOR_EXPONENTS:
        raise InvalidConfig(f"unknown noise color {color!r}")
    if math.isinf(snr_db) and snr_db > 0:
        return f
    if math.isnan(snr_db):
        raise InvalidConfig("snr_db is NaN")
    rng = np.random.default_rng(seed)
    spec = sfft.fft(_white(rng, len(f)))
    nu = np.abs(sfft.fftfreq(len(f), d=f.dt))
    gain = np.zeros_like(nu)
    nz = nu > 0
    gain[nz] = nu[nz] ** (COLOR_EXPONENTS[color] / 2)
    return _scale_to_snr(f, sfft.ifft(spec * gain), snr_db)


def add_noise(f: Signal, noise_kind: str, snr_db: float, seed: int) -> Signal:
    return colored_noise(f, noise_kind, snr_db, seed)


def achieved_snr_db(f: Signal, g: Signal) -> float:
    n = g.samples - f.samples
    return float(10 * np.log10(np.sum(np.abs(f.samples) ** 2) / np.sum(np.abs(n) ** 2)))
