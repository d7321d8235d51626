"""Idealized receiver: waveform reconstruction, matched filtering, constellation metrics.

The receiver is noise-free and synchronization-free: it knows the clock phase
and samples each clock interval at the settled instant i*T_c + T_t, which
recovers the commanded step amplitudes exactly for any T_t <= T_c.  Shaped
streams are then matched-filtered and decimated with full group-delay
compensation; unshaped streams are decimated directly.  A least-squares
complex gain aligns the received constellation with its reference before any
metric is computed, so common rotations and scale (attenuator full-scale,
filter gain) never count as error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .shaping import RrcFilter
from .txchain import WeightSequence
from .waveform import (
    AmplitudeSequence,
    HardwareProfile,
    PiecewiseLinearWaveform,
    to_piecewise_linear,
)

__all__ = [
    "ReceivedConstellation",
    "synthesize",
    "receive",
    "phase_error_rms",
    "evm_rms",
]


@dataclass(frozen=True)
class ReceivedConstellation:
    """Recovered symbols with their reference and summary quality metrics."""

    symbols: np.ndarray
    reference: np.ndarray
    phase_error_rms_deg: float
    evm_rms_pct: float


def synthesize(seq: WeightSequence, oversample: int = 1) -> PiecewiseLinearWaveform:
    """Continuous-time I/Q waveform produced by a weight sequence.

    Each clock edge starts a linear ramp of duration T_t to the commanded
    sample.  The waveform is exact (breakpoints); `oversample` only sets the
    density of exported sample grids elsewhere and must be >= 1.
    """
    if oversample < 1:
        raise ValueError("oversample must be >= 1")
    samples = seq.samples()
    if samples.size < 2:
        raise ValueError("need at least two commands to synthesize a waveform")
    return to_piecewise_linear(AmplitudeSequence(samples), seq.hw)


def _settled_samples(w: PiecewiseLinearWaveform, t_clock: float, t_transition: float) -> np.ndarray:
    """One sample per clock at the post-ramp instant i*T_c + T_t."""
    t_last = w.times[-1]
    n = int(np.floor((t_last - t_transition) / t_clock + 0.5)) + 1
    if n < 1:
        raise ValueError("waveform shorter than one clock period")
    return w(np.arange(n) * t_clock + t_transition)


def receive(
    w: PiecewiseLinearWaveform,
    filt: RrcFilter | None,
    hw: HardwareProfile,
    n_symbols: int,
    reference,
    sps: int | None = None,
) -> ReceivedConstellation:
    """Demodulate a transmitted waveform back to a constellation.

    With an RRC filter: samples at the clock rate, applies the matched filter,
    compensates the combined TX+RX group delay (span symbols), and decimates
    to the symbol rate.  Without a filter (unshaped streams): picks the
    settled per-clock sample of each symbol directly.  The result is fitted to
    `reference` by a least-squares complex gain.

    Raises:
        ValueError: waveform too short for n_symbols, or degenerate (zero)
            waveform that cannot be gain-normalized.
    """
    reference = np.asarray(reference, dtype=complex)
    if reference.size != n_symbols:
        raise ValueError("reference length must equal n_symbols")
    if sps is None:
        sps = filt.sps if filt is not None else 1

    r = _settled_samples(w, hw.t_clock, hw.t_transition)
    if filt is not None:
        matched = np.convolve(r, filt.taps, mode="full")
        start = 2 * filt.group_delay
    else:
        matched = r
        start = 0
    need = start + (n_symbols - 1) * sps
    if need >= matched.size:
        raise ValueError(
            f"waveform too short: need {need + 1} clock samples after filtering, "
            f"have {matched.size}"
        )
    y = matched[start : start + n_symbols * sps : sps]

    power = np.vdot(y, y).real
    if power <= 0.0:
        raise ValueError("zero waveform: gain normalization is degenerate")
    gain = np.vdot(y, reference) / power
    y = gain * y

    return ReceivedConstellation(
        symbols=y,
        reference=reference,
        phase_error_rms_deg=phase_error_rms(y, reference),
        evm_rms_pct=evm_rms(y, reference),
    )


def phase_error_rms(received, reference) -> float:
    """RMS wrapped angular deviation arg(received * conj(reference)), in degrees.

    Invariant to any common complex gain applied to both arguments.
    """
    received = np.asarray(received, dtype=complex)
    reference = np.asarray(reference, dtype=complex)
    if received.size != reference.size or received.size == 0:
        raise ValueError("received and reference must have equal nonzero length")
    if np.any(reference == 0):
        raise ValueError("reference symbols must be nonzero")
    err = np.angle(received * np.conj(reference))
    return float(np.degrees(np.sqrt(np.mean(err**2))))


def evm_rms(received, reference) -> float:
    """RMS error vector magnitude in percent of RMS reference power."""
    received = np.asarray(received, dtype=complex)
    reference = np.asarray(reference, dtype=complex)
    if received.size != reference.size or received.size == 0:
        raise ValueError("received and reference must have equal nonzero length")
    return float(
        100.0
        * np.sqrt(np.sum(np.abs(received - reference) ** 2) / np.sum(np.abs(reference) ** 2))
    )
