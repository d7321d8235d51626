"""Bit-to-register transmit chain: QPSK mapping and beamformer command quantization.

The beamformer applies each complex sample as a phase-shifter code plus an
attenuator code.  Both registers are uniform grids: phase codes cover
[0, 360) degrees in 2^phase_bits steps; amplitude codes are a mid-rise grid
over [0, 1] full scale (level (c + 0.5)/2^amp_bits), which keeps the
worst-case amplitude error at 0.5/2^amp_bits everywhere including full scale.
Per-element beam weights are fixed at unity: single-element scope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .waveform import AmplitudeSequence, HardwareProfile

__all__ = [
    "RegisterCommand",
    "WeightSequence",
    "map_qpsk",
    "quantize",
    "dequantize",
    "build_weight_sequence",
    "QPSK_POINTS",
]

# Gray-coded QPSK anchored at 00 -> (1+j)/sqrt(2); unit average power.
QPSK_POINTS = np.array([1 + 1j, -1 + 1j, 1 - 1j, -1 - 1j]) / np.sqrt(2.0)


@dataclass(frozen=True)
class RegisterCommand:
    """One beamformer register update: phase code + attenuation code."""

    phase_code: int
    amp_code: int

    def validate(self, hw: HardwareProfile) -> None:
        if not (0 <= self.phase_code < 2**hw.phase_bits):
            raise ValueError(f"phase_code {self.phase_code} out of range")
        if not (0 <= self.amp_code < 2**hw.amp_bits):
            raise ValueError(f"amp_code {self.amp_code} out of range")


@dataclass(frozen=True)
class WeightSequence:
    """Per-clock beamformer commands; the register-programming artifact.

    In quantized mode `phase_codes`/`amp_codes` hold the register values and
    the commanded samples are their decoded grid points.  In unquantized mode
    (infinite-resolution oracle runs) `exact` carries the samples bit-exactly
    and the code arrays are None.
    """

    hw: HardwareProfile
    quantized: bool
    phase_codes: np.ndarray | None = None
    amp_codes: np.ndarray | None = None
    exact: np.ndarray | None = None

    def __len__(self) -> int:
        arr = self.phase_codes if self.quantized else self.exact
        return 0 if arr is None else arr.size

    def commands(self) -> list[RegisterCommand]:
        if not self.quantized:
            raise ValueError("unquantized sequence carries exact samples, not codes")
        return [
            RegisterCommand(int(p), int(a))
            for p, a in zip(self.phase_codes, self.amp_codes)
        ]

    def samples(self) -> np.ndarray:
        """Commanded complex samples (decoded from codes when quantized)."""
        if self.quantized:
            return _decode(self.phase_codes, self.amp_codes, self.hw)
        return self.exact.copy()


def map_qpsk(bits) -> np.ndarray:
    """Map a bit stream (even length) to Gray-coded QPSK symbols.

    00 -> (1+j)/sqrt(2), 01 -> (-1+j)/sqrt(2), 11 -> (-1-j)/sqrt(2),
    10 -> (1-j)/sqrt(2): adjacent constellation points differ in one bit.
    """
    bits = np.asarray(bits, dtype=int)
    if bits.ndim != 1 or bits.size % 2 != 0:
        raise ValueError(f"need an even number of bits, got {bits.size}")
    if np.any((bits != 0) & (bits != 1)):
        raise ValueError("bits must be 0 or 1")
    b0 = bits[0::2]
    b1 = bits[1::2]
    # Gray mapping: b0 selects the real sign, b1 the imaginary sign
    return ((1 - 2 * b0) + 1j * (1 - 2 * b1)) / np.sqrt(2.0)


def _phase_step(hw: HardwareProfile) -> float:
    return 2.0 * np.pi / 2**hw.phase_bits


def _encode(samples: np.ndarray, hw: HardwareProfile):
    mag = np.abs(samples)
    if np.any(mag > 1.0 + 1e-12):
        raise ValueError(
            f"sample magnitude {mag.max():.6g} exceeds full scale; "
            "normalize (or clip explicitly) before quantizing"
        )
    phase = np.angle(samples) % (2.0 * np.pi)
    # floor(x + 0.5) implements round-half-up on the nonnegative grid index
    pcodes = np.floor(phase / _phase_step(hw) + 0.5).astype(int) % 2**hw.phase_bits
    levels = 2**hw.amp_bits
    acodes = np.clip(np.floor(mag * levels), 0, levels - 1).astype(int)
    return pcodes, acodes


def _decode(pcodes: np.ndarray, acodes: np.ndarray, hw: HardwareProfile) -> np.ndarray:
    amp = (np.asarray(acodes) + 0.5) / 2**hw.amp_bits
    return amp * np.exp(1j * np.asarray(pcodes) * _phase_step(hw))


def quantize(sample: complex, hw: HardwareProfile) -> RegisterCommand:
    """Round one full-scale sample (|sample| <= 1) to the nearest register codes."""
    p, a = _encode(np.atleast_1d(np.asarray(sample, dtype=complex)), hw)
    return RegisterCommand(int(p[0]), int(a[0]))


def dequantize(cmd: RegisterCommand, hw: HardwareProfile) -> complex:
    """Decoded grid point of a register command; quantize(dequantize(c)) == c."""
    cmd.validate(hw)
    return complex(_decode(np.array([cmd.phase_code]), np.array([cmd.amp_code]), hw)[0])


def build_weight_sequence(
    samples: AmplitudeSequence | np.ndarray,
    hw: HardwareProfile,
    quantized: bool = True,
) -> WeightSequence:
    """Convert normalized samples into per-clock beamformer commands.

    With quantized=False the commands carry the exact values, giving the
    lossless infinite-resolution mode used for oracle runs.
    """
    arr = samples.samples if isinstance(samples, AmplitudeSequence) else np.asarray(samples, dtype=complex)
    if arr.size == 0:
        raise ValueError("need at least one sample")
    if np.any(np.abs(arr) > 1.0 + 1e-12):
        raise ValueError(
            f"sample magnitude {np.abs(arr).max():.6g} exceeds full scale; "
            "normalize before building the weight sequence"
        )
    if not quantized:
        return WeightSequence(hw=hw, quantized=False, exact=arr.copy())
    p, a = _encode(arr, hw)
    return WeightSequence(hw=hw, quantized=True, phase_codes=p, amp_codes=a)
