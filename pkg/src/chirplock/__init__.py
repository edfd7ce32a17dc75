"""chirplock: chirp-jammer detection and bearing estimation toolkit.

Fast fractional Fourier transforms (single-phase and polyphase chirp
convolution pipelines), a three-path detector bank with Monte-Carlo
threshold calibration, subspace azimuth estimation on fractionally
focused array data, and reproducible sweep harnesses behind a CLI.
"""

__version__ = "0.1.0"

from .detection import (
    BlockDetector,
    DegenerateInputError,
    DetectionReport,
    DetectorConfig,
    NoiseModel,
    ThresholdSet,
    calibrate,
    coarse_detect,
    detect,
    energy_statistic,
    fine_detect,
    gss_maximize,
    iterative_maximize,
    spectral_kurtosis,
)
from .doa import (
    DoAEstimate,
    FocusedArrayData,
    SpatialSpectrum,
    covariance,
    estimate_azimuth,
    focus,
    noise_subspace,
    spatial_smooth,
    spatial_spectrum,
)
from .frft import (
    FrftOrder,
    FrftResult,
    MultiOrderTransformer,
    canonicalize_order,
    frft,
    frft_block,
    frft_two_phase,
    predict_matched_order,
    transform_units,
)
from .harness import (
    DoaScenario,
    ScenarioConfig,
    SweepResult,
    run_doa_sweep,
    run_pd_sweep,
    run_roc,
    run_table1,
)
from .signals import (
    ArraySnapshot,
    ChirpParams,
    IQBuffer,
    child_seed,
    gen_array_snapshot,
    gen_chirp,
    gen_wgn,
    mix,
    read_iq,
    steering_phases,
    write_iq,
)

__all__ = [
    "ArraySnapshot", "BlockDetector", "ChirpParams", "DegenerateInputError",
    "DetectionReport", "DetectorConfig", "DoAEstimate", "DoaScenario",
    "FocusedArrayData", "FrftOrder", "FrftResult", "IQBuffer",
    "MultiOrderTransformer", "NoiseModel", "ScenarioConfig",
    "SpatialSpectrum", "SweepResult", "ThresholdSet", "calibrate",
    "canonicalize_order", "child_seed", "coarse_detect", "covariance",
    "detect", "energy_statistic", "estimate_azimuth", "fine_detect",
    "focus", "frft", "frft_block", "frft_two_phase", "gen_array_snapshot",
    "gen_chirp", "gen_wgn", "gss_maximize", "iterative_maximize", "mix",
    "noise_subspace", "predict_matched_order", "read_iq", "run_doa_sweep",
    "run_pd_sweep", "run_roc", "run_table1", "spatial_smooth",
    "spatial_spectrum", "spectral_kurtosis", "steering_phases",
    "transform_units", "write_iq",
]
