"""Shared domain types, grid arithmetic and on-disk formats.

Every time-frequency quantity in the package lives on a :class:`Grid2D`: a
complex matrix with two uniformly sampled axes and a role tag saying what the
axes mean. Signals are complex 1-D sample vectors with a sample rate and a start
time. Both types are immutable; operations return new objects.
"""

from __future__ import annotations

import csv
import enum
import math
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np


class TFDError(Exception):
    """Base class for errors raised by this package."""


class InvalidDims(TFDError, ValueError):
    pass


class AxisMismatch(TFDError, ValueError):
    pass


class InvalidConfig(TFDError, ValueError):
    pass


class SizeLimit(TFDError, ValueError):
    pass


class DegenerateInput(TFDError, ArithmeticError):
    pass


class AliasingWarning(UserWarning):
    """Signal content above fs/4 folds over in the even-lag WVD."""


class NotRankOneWarning(UserWarning):
    """The grid handed to reconstruction is far from a valid WVD."""


class NonPSDWarning(UserWarning):
    """The implied outer-product matrix has no positive eigenvalue."""


class Role(enum.IntEnum):
    TFD = 0
    SPECTRUM = 1
    KERNEL = 2
    CORRELATION = 3


# (axis0 unit, axis1 unit) for each role
ROLE_UNITS = {
    Role.TFD: ("s", "Hz"),
    Role.SPECTRUM: ("Hz", "s"),
    Role.KERNEL: ("Hz", "s"),
    Role.CORRELATION: ("s", "s"),
}


@dataclass(frozen=True)
class Axis:
    origin: float
    step: float
    unit: str = ""

    def __post_init__(self):
        if not (math.isfinite(self.step) and self.step > 0):
            raise InvalidDims(f"axis step must be positive and finite, got {self.step}")
        if not math.isfinite(self.origin):
            raise InvalidDims(f"axis origin must be finite, got {self.origin}")

    def values(self, n: int) -> np.ndarray:
        return self.origin + self.step * np.arange(n)

    def close_to(self, other: "Axis", rtol: float = 1e-9) -> bool:
        scale = max(abs(self.step), abs(other.step))
        return (
            abs(self.step - other.step) <= rtol * scale
            and abs(self.origin - other.origin) <= rtol * max(scale, abs(self.origin))
            and self.unit == other.unit
        )


def centered_axis(n: int, step: float, unit: str = "") -> Axis:
    """Axis whose samples are ``k * step`` for k in fftshift order (zero at n//2)."""
    return Axis(-(n // 2) * step, step, unit)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Signal:
    """Uniformly sampled complex signal."""

    samples: np.ndarray
    sample_rate_hz: float
    t_start: float = 0.0

    def __post_init__(self):
        x = np.array(self.samples, dtype=np.complex128).reshape(-1)
        if x.size < 2:
            raise InvalidDims("a signal needs at least 2 samples")
        if not (math.isfinite(self.sample_rate_hz) and self.sample_rate_hz > 0):
            raise InvalidDims(f"sample rate must be positive, got {self.sample_rate_hz}")
        object.__setattr__(self, "samples", _frozen(x))
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))
        object.__setattr__(self, "t_start", float(self.t_start))

    def __len__(self) -> int:
        return self.samples.size

    @property
    def dt(self) -> float:
        return 1.0 / self.sample_rate_hz

    @property
    def times(self) -> np.ndarray:
        return self.t_start + np.arange(len(self)) / self.sample_rate_hz

    def energy(self) -> float:
        """Riemann approximation of the squared L2 norm, sum |f|^2 dt."""
        return float(np.sum(np.abs(self.samples) ** 2) * self.dt)

    def with_samples(self, samples) -> "Signal":
        return Signal(samples, self.sample_rate_hz, self.t_start)

    def same_lattice(self, other: "Signal") -> bool:
        return (
            len(self) == len(other)
            and math.isclose(self.sample_rate_hz, other.sample_rate_hz, rel_tol=1e-12)
            and math.isclose(self.t_start, other.t_start, rel_tol=1e-12, abs_tol=1e-12)
        )


@dataclass(frozen=True)
class Grid2D:
    """Complex matrix sampled on a uniform 2-D lattice.

    Row index runs along ``axis0``, column index along ``axis1``. The ``role``
    tag fixes the physical meaning of the axes (see ``ROLE_UNITS``).
    """

    values: np.ndarray
    axis0: Axis
    axis1: Axis
    role: Role = Role.TFD

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128)
        if v.ndim != 2 or v.shape[0] < 2 or v.shape[1] < 2:
            raise InvalidDims(f"grid must be at least 2x2, got shape {v.shape}")
        object.__setattr__(self, "values", _frozen(v))
        object.__setattr__(self, "role", Role(self.role))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def cell(self) -> float:
        """Area of one lattice cell, used as the Riemann weight."""
        return self.axis0.step * self.axis1.step

    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        return self.axis0.values(self.shape[0]), self.axis1.values(self.shape[1])

    def with_values(self, values, role: Role | None = None) -> "Grid2D":
        return Grid2D(values, self.axis0, self.axis1, self.role if role is None else role)

    def scaled(self, c: complex) -> "Grid2D":
        return self.with_values(c * self.values)


def grid_alloc(n_rows: int, n_cols: int, axis0: Axis, axis1: Axis, role: Role = Role.TFD) -> Grid2D:
    if n_rows < 2 or n_cols < 2:
        raise InvalidDims(f"grid dims must be >= 2, got {n_rows}x{n_cols}")
    return Grid2D(np.zeros((n_rows, n_cols), dtype=np.complex128), axis0, axis1, role)


def check_compatible(a: Grid2D, b: Grid2D) -> None:
    if a.shape != b.shape:
        raise AxisMismatch(f"shape {a.shape} != {b.shape}")
    if a.role != b.role:
        raise AxisMismatch(f"role {a.role.name} != {b.role.name}")
    if not (a.axis0.close_to(b.axis0) and a.axis1.close_to(b.axis1)):
        raise AxisMismatch("grid axes differ")


def grid_sub(a: Grid2D, b: Grid2D) -> Grid2D:
    check_compatible(a, b)
    return a.with_values(a.values - b.values)


def grid_l2(a: Grid2D) -> float:
    """sqrt(sum |v|^2 * d0 * d1), scaled by the peak so tiny grids do not underflow."""
    mag = np.abs(a.values)
    peak = mag.max()
    if peak == 0 or not np.isfinite(peak):
        return float(peak)
    return float(peak * np.sqrt(np.sum((mag / peak) ** 2) * a.cell))


# ---------------------------------------------------------------------------
# Experiment bookkeeping

SIGNAL_KINDS = ("LFM", "GELFM", "QFM", "SFM")
NOISE_KINDS = ("white", "pink", "blue", "red")
METHODS = (
    "margenau-hill",
    "kirkwood-rihaczek",
    "born-jordan",
    "page",
    "wiener-1d",
    "adaptive-cctfd",
)


@dataclass(frozen=True)
class ExperimentConfig:
    signal_kind: str
    noise_kind: str
    snr_db_list: tuple[float, ...]
    sample_rate_hz: float
    interval: tuple[float, float]
    methods: tuple[str, ...]
    seeds: tuple[int, ...]
    delta: float

    def __post_init__(self):
        for name in ("snr_db_list", "methods", "seeds"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "interval", tuple(float(v) for v in self.interval))
        if self.signal_kind not in SIGNAL_KINDS:
            raise InvalidConfig(f"unknown signal kind {self.signal_kind!r}")
        if self.noise_kind not in NOISE_KINDS:
            raise InvalidConfig(f"unknown noise kind {self.noise_kind!r}")
        if not self.snr_db_list or not self.methods or not self.seeds:
            raise InvalidConfig("snr_db_list, methods and seeds must be non-empty")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise InvalidConfig(f"unknown methods {bad}")
        if any(int(s) < 0 for s in self.seeds):
            raise InvalidConfig("seeds must be non-negative integers")
        if len(self.interval) != 2 or not self.interval[0] < self.interval[1]:
            raise InvalidConfig(f"bad interval {self.interval}")
        if not self.sample_rate_hz > 0:
            raise InvalidConfig("sample rate must be positive")
        if not self.delta >= 0:
            raise InvalidConfig("delta must be >= 0")


@dataclass(frozen=True)
class MetricRow:
    method: str
    signal: str
    noise: str
    snr_db: float
    seed: int
    mse_log10: float | None
    psnr_db: float | None
    status: str = "ok"


@dataclass
class MetricReport:
    rows: list[MetricRow] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------------------
# TFDG binary grid files and signal CSV

_MAGIC = b"TFDG"
_VERSION = 1
_HEADER = struct.Struct("<4sIBII4d")


def write_grid(path, grid: Grid2D) -> None:
    n_rows, n_cols = grid.shape
    header = _HEADER.pack(
        _MAGIC, _VERSION, int(grid.role), n_rows, n_cols,
        grid.axis0.origin, grid.axis0.step, grid.axis1.origin, grid.axis1.step,
    )
    body = np.ascontiguousarray(grid.values, dtype="<c16").tobytes()
    Path(path).write_bytes(header + body)


def read_grid(path) -> Grid2D:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise InvalidDims("truncated TFDG header")
    magic, version, role, n_rows, n_cols, o0, s0, o1, s1 = _HEADER.unpack_from(raw)
    if magic != _MAGIC:
        raise InvalidDims(f"bad magic {magic!r}")
    if version != _VERSION:
        raise InvalidDims(f"unsupported TFDG version {version}")
    role = Role(role)
    expected = n_rows * n_cols * 16
    body = raw[_HEADER.size:]
    if len(body) != expected:
        raise InvalidDims(f"TFDG body has {len(body)} bytes, expected {expected}")
    values = np.frombuffer(body, dtype="<c16").reshape(n_rows, n_cols)
    u0, u1 = ROLE_UNITS[role]
    return Grid2D(values.copy(), Axis(o0, s0, u0), Axis(o1, s1, u1), role)


def write_signal_csv(path, signal: Signal) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "re", "im"])
        for t, v in zip(signal.times, signal.samples):
            w.writerow([repr(float(t)), repr(float(v.real)), repr(float(v.imag))])


def read_signal_csv(path) -> Signal:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != ["t", "re", "im"]:
        raise InvalidDims("signal CSV must start with header t,re,im")
    data = np.array([[float(c) for c in r] for r in rows[1:] if r], dtype=float)
    if data.shape[0] < 2:
        raise InvalidDims("signal CSV needs at least 2 rows")
    t = data[:, 0]
    steps = np.diff(t)
    if np.any(steps <= 0):
        raise InvalidDims("time column must be strictly increasing")
    # round away the float noise from the text round trip (80.00000000000001 -> 80)
    fs = float(f"{(len(t) - 1) / (t[-1] - t[0]):.12g}")
    return Signal(data[:, 1] + 1j * data[:, 2], fs, t[0])


def as_signal(x: Signal | Sequence[complex], sample_rate_hz: float = 1.0) -> Signal:
    return x if isinstance(x, Signal) else Signal(np.asarray(x), sample_rate_hz)
