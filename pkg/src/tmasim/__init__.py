"""tmasim: RF chain-free (time-modulated-array) transmitter simulation toolkit.

Models the baseband waveforms produced by fast periodic updates of analog
beamformer weights (phase shifter + attenuator), including the hardware
response ramp between consecutive weights, and analyzes their spectra with
an exact, FFT-free transform.  Includes root-raised-cosine pulse shaping,
6-bit register quantization of the weight commands, an idealized matched
receiver with constellation metrics, and harmonic-suppression measurements.
"""

from .impaired_dft import (
    FrequencyGrid,
    IllConditionedError,
    ImpairedDftOperator,
    build_operator,
    difference_vector,
    forward,
    harmonic_images,
    inverse_design,
    spectrum_of_sequence,
    steering_vector,
    transition_kernel,
)
from .metrics import harmonic_suppression, psd
from .rxsim import ReceivedConstellation, evm_rms, phase_error_rms, receive, synthesize
from .shaping import RrcFilter, design_rrc, shape_symbols
from .txchain import (
    QPSK_POINTS,
    RegisterCommand,
    WeightSequence,
    build_weight_sequence,
    dequantize,
    map_qpsk,
    quantize,
)
from .waveform import (
    AmplitudeSequence,
    HardwareProfile,
    PiecewiseLinearWaveform,
    analytic_spectrum,
    eval_ideal_pulse,
    eval_real_pulse,
    eval_stepped_pulse,
    real_pulse_spectrum_discrepancy,
    spectrum_ideal,
    spectrum_real_closed_form,
    to_piecewise_linear,
)

__version__ = "0.1.0"
