"""Root-raised-cosine pulse shaping for the stepped-weight transmitter.

Shaped filter outputs are applied directly as the per-clock step amplitudes
a_i, so "samples per symbol" here is the number of weight updates per
modulation symbol.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .waveform import AmplitudeSequence

__all__ = ["RrcFilter", "design_rrc", "shape_symbols", "upsample"]


@dataclass(frozen=True)
class RrcFilter:
    """Unit-energy, linear-phase RRC taps.

    Attributes:
        rolloff: excess-bandwidth factor beta in (0, 1]
        sps: samples (weight updates) per symbol
        span: filter length in symbols (even), taps cover span*sps + 1 points
        taps: real coefficients, symmetric, sum of squares = 1
    """

    rolloff: float
    sps: int
    span: int
    taps: np.ndarray

    @property
    def group_delay(self) -> int:
        """Delay of the tap center in samples."""
        return (self.taps.size - 1) // 2


def design_rrc(rolloff: float, sps: int, span: int = 8) -> RrcFilter:
    """Design a root-raised-cosine filter from the standard impulse response.

    The two singular points of the closed form (t = 0 and |t| = T/(4 beta))
    are evaluated by their analytic limits.  Taps are normalized to unit
    energy, which makes the center tap the maximum and the RRC/matched-RRC
    cascade a unit-gain Nyquist pulse.
    """
    if not (0.0 < rolloff <= 1.0):
        raise ValueError(f"rolloff must be in (0, 1], got {rolloff}")
    if sps < 1:
        raise ValueError(f"sps must be >= 1, got {sps}")
    if span < 2 or span % 2 != 0:
        raise ValueError(f"span must be an even integer >= 2, got {span}")

    beta = float(rolloff)
    # symbol-normalized time grid, symmetric about 0
    t = np.arange(-span * sps // 2, span * sps // 2 + 1) / sps
    h = np.empty(t.size)

    at_zero = t == 0.0
    h[at_zero] = 1.0 - beta + 4.0 * beta / np.pi

    at_pole = np.isclose(np.abs(t), 1.0 / (4.0 * beta), rtol=0.0, atol=1e-12)
    if np.any(at_pole):
        h[at_pole] = (beta / np.sqrt(2.0)) * (
            (1.0 + 2.0 / np.pi) * np.sin(np.pi / (4.0 * beta))
            + (1.0 - 2.0 / np.pi) * np.cos(np.pi / (4.0 * beta))
        )

    rest = ~(at_zero | at_pole)
    tr = t[rest]
    h[rest] = (
        np.sin(np.pi * tr * (1.0 - beta))
        + 4.0 * beta * tr * np.cos(np.pi * tr * (1.0 + beta))
    ) / (np.pi * tr * (1.0 - (4.0 * beta * tr) ** 2))

    h /= np.linalg.norm(h)
    return RrcFilter(rolloff=beta, sps=sps, span=span, taps=h)


def upsample(symbols, sps: int) -> np.ndarray:
    """Zero-stuff: one symbol then sps-1 zeros."""
    symbols = np.asarray(symbols, dtype=complex)
    out = np.zeros(symbols.size * sps, dtype=complex)
    out[::sps] = symbols
    return out


def shape_symbols(symbols, filt: RrcFilter) -> AmplitudeSequence:
    """Shape a symbol stream into per-clock step amplitudes.

    Zero-stuffs by filt.sps, convolves with the taps, and prepends a_0 = 0 so
    the sequence starts from the idle state.  Output holds
    len(symbols)*sps + span*sps filter samples (a_1..a_N).
    """
    symbols = np.asarray(symbols, dtype=complex)
    if symbols.size == 0:
        raise ValueError("need at least one symbol")
    shaped = np.convolve(upsample(symbols, filt.sps), filt.taps, mode="full")
    return AmplitudeSequence(np.concatenate([[0.0 + 0.0j], shaped]))
