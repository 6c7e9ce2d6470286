"""Frequency-selective PAPR reduction for OFDM: ICF and ICEF with mask control."""

__version__ = "0.1.0"

from .engine import (
    ClippingNoise,
    ComplexityEstimate,
    PaprReductionResult,
    complexity,
    icef_step,
    icf_step,
    run,
)
from .errors import (
    ConfigurationError,
    ContractError,
    DimensionError,
    ExtrapolationError,
    IcefError,
    InvalidSignalError,
    ParseError,
    PlanError,
    StatisticsError,
)
from .masks import (
    FrequencyMask,
    SubBandLayout,
    centered_clean_mask,
    icf_mask,
    subband_mask,
    validate,
)
from .metrics import (
    CcdfCurve,
    Feasibility,
    MseReport,
    MseRequirementTable,
    estimate_ccdf,
    feasibility,
    mse_report,
    noise_spectrum,
    papr_at_probability,
)
from .waveform import (
    ClipperConfig,
    OfdmSymbol,
    WaveformConfig,
    clip,
    forward_transform,
    generate_qam_symbols,
    inverse_transform,
    ofdm_modulate,
    papr_db,
    threshold_from_target,
)
