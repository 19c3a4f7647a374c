"""dbfrx: bit-accurate simulator for a beamform-before-DDC receiver.

The library models a phased-array receiver that digitizes four RF channels
with a 12-bit under-sampling ADC, beamforms them in fixed point *before*
down-conversion, and then runs a single complex channel through a
multiplier-free fs/4 mixer and a 64-tap low-pass FIR.  The conventional
per-channel-DDC architecture, double-precision oracles of both, a
frequency-planning toolbox, spectral analysis, and an arithmetic cost model
round out the package so the architecture's equivalence and scaling claims
can be tested in software.
"""

from .adc_model import AdcConfig, Capture, ChannelFrame, capture, quantize
from .analysis import (
    BeamPattern,
    ComparisonReport,
    SpectralMetrics,
    beam_pattern,
    compare,
    instantaneous_frequency,
    power_spectrum,
    spectral_metrics,
)
from .array_signal import (
    ArrayConfig,
    SteeringVector,
    TestSignalSpec,
    element_delay,
    element_delays,
    steering_vector,
    synthesize_channels,
)
from .dbf_core import (
    ChainDiagnostics,
    ComplexWeightSet,
    IqFrame,
    TruncationWindow,
    beamform_frame,
    beamform_stream,
    quantize_weights,
    steering_weights,
)
from .ddc_fs4 import DdcPhase, ddc_frame, mix_quarter_rate
from .errors import NoFundamentalError, ValidationError, ZoneEdgeError
from .fir import FirSpec, FirState, design_lowpass, filter_frame, filter_stream, quantize_coeffs
from .frequency_plan import (
    FrequencyPlan,
    RateRange,
    all_undersample_ranges,
    nyquist_zone,
    undersample_range_direct,
    undersample_range_inverted,
)
from .reference_chain import (
    PipelineConfig,
    RunResult,
    run,
    run_float_oracle,
    run_proposed,
    run_standard,
    steered_pipeline,
)
from .resource_model import ResourceReport, StageCost, estimate

__version__ = "0.1.0"
