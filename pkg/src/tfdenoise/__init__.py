"""Time-frequency denoising with Cohen-class distributions and a least-squares
adaptive filter on the Wigner-Ville plane."""

from .core import (
    AliasingWarning,
    Axis,
    AxisMismatch,
    DegenerateInput,
    ExperimentConfig,
    Grid2D,
    InvalidConfig,
    InvalidDims,
    MetricReport,
    MetricRow,
    NonPSDWarning,
    NotRankOneWarning,
    Role,
    Signal,
    SizeLimit,
    TFDError,
    grid_alloc,
    grid_l2,
    grid_sub,
    read_grid,
    read_signal_csv,
    write_grid,
    write_signal_csv,
)
from .cctfd import cctfd_convolution, cctfd_integral, denoise_via_kernel
from .harness import default_config, full_configs, load_configs, run_experiment, run_experiments, write_outputs
from .kernels import (
    BORN_JORDAN,
    FIXED_KERNELS,
    KIRKWOOD_RIHACZEK,
    MARGENAU_HILL,
    PAGE,
    KernelKind,
    KernelSpec,
    eval_kernel,
    kernel_transform,
)
from .lsaf import (
    FilterDesign,
    adaptive_cctfd,
    apply_filter,
    cross_psd,
    denoise_lsaf,
    design_lsaf,
    lsaf_impulse_response,
    min_mse,
    optimal_kernel,
    wiener_1d,
    wiener_hopf_residual,
)
from .metrics import align_phase, mse_log10, psnr_avg
from .siggen import add_noise, awgn, colored_noise, gen_signal
from .wvd import instantaneous_autocorrelation, reconstruct, wvd, wvd_energy

__version__ = "0.1.0"
