"""Spectrum operator for stepped waveforms with hardware transition/clock impairments.

The spectrum of a stepped pulse with ramp time T_t and clock period T_c is a
linear map of the amplitude-step differences: each frequency row is the
transition kernel k(f) times the conjugated clock steering vector s(f).
Stacking rows over a frequency grid gives a DFT-like matrix ("impaired DFT")
whose inverse, on a restricted band, designs step sequences from target
spectrum samples.

DC is excluded from the operator (the kernel has a 1/f pole); the DC value of
a waveform is the segment-area sum provided by `waveform.analytic_spectrum`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import czt

from .waveform import AmplitudeSequence, HardwareProfile, sinc

__all__ = [
    "FrequencyGrid",
    "ImpairedDftOperator",
    "IllConditionedError",
    "transition_kernel",
    "steering_vector",
    "difference_vector",
    "build_operator",
    "forward",
    "spectrum_of_sequence",
    "inverse_design",
    "harmonic_images",
]

CONDITION_LIMIT = 1e12


class IllConditionedError(ValueError):
    """Raised when the design matrix is numerically singular; carries the estimate."""

    def __init__(self, condition: float):
        self.condition = condition
        super().__init__(
            f"design matrix condition number {condition:.3e} exceeds "
            f"{CONDITION_LIMIT:.0e}; choose better-separated in-band frequencies"
        )


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing list of evaluation frequencies in Hz."""

    freqs: np.ndarray

    def __init__(self, freqs):
        freqs = np.asarray(freqs, dtype=float)
        if freqs.ndim != 1 or freqs.size < 1:
            raise ValueError("grid must hold at least one frequency")
        if not np.all(np.isfinite(freqs)):
            raise ValueError("grid frequencies must be finite")
        if freqs.size > 1 and not np.all(np.diff(freqs) > 0):
            raise ValueError("grid frequencies must be strictly increasing")
        object.__setattr__(self, "freqs", freqs)

    def __len__(self) -> int:
        return self.freqs.size

    def validate_for_inverse(self, hw: HardwareProfile, n_transitions: int) -> None:
        """Inverse-mode constraints: nonzero, inside [-1/T_t, 1/T_t), square system."""
        f = self.freqs
        band = 1.0 / hw.t_transition
        if np.any(f == 0.0):
            raise ValueError("inverse design grid must not contain f = 0 (DC)")
        if np.any((f < -band) | (f >= band)):
            raise ValueError(
                f"inverse design grid must lie within [-1/T_t, 1/T_t) = "
                f"[{-band:.6g}, {band:.6g}) Hz"
            )
        if np.any(np.abs(np.abs(f) - band) < 1e-12 * band):
            raise ValueError(
                "inverse design grid touches the kernel null at |f| = 1/T_t "
                "(singular row)"
            )
        if len(self) != n_transitions:
            raise ValueError(
                f"inverse design needs a square system: {len(self)} frequencies "
                f"for {n_transitions} transitions"
            )


def transition_kernel(f, t_transition: float):
    """Per-transition spectrum factor k(f) = sinc(T_t pi f)/(-j 2 pi f) e^{-j pi f T_t}.

    Magnitude decays as 1/f with nulls at multiples of 1/T_t.  f = 0 is a pole
    and is rejected; DC belongs to the waveform-area path, not the operator.
    """
    f = np.asarray(f, dtype=float)
    if np.any(f == 0.0):
        raise ValueError(
            "transition kernel is undefined at f = 0; use the analytic "
            "spectrum (segment areas) for the DC value"
        )
    return (
        sinc(t_transition * np.pi * f)
        / (-1j * 2 * np.pi * f)
        * np.exp(-1j * np.pi * f * t_transition)
    )


def steering_vector(f: float, t_clock: float, n: int):
    """Clock steering column: element i is e^{j 2 pi f i T_c}, i = 0..n-1."""
    if n < 1:
        raise ValueError("need n >= 1 steering elements")
    return np.exp(1j * 2 * np.pi * f * t_clock * np.arange(n))


def difference_vector(seq: AmplitudeSequence) -> np.ndarray:
    """Step-difference column x': entry i is a_i - a_{i+1}."""
    a = seq.samples
    return a[:-1] - a[1:]


@dataclass(frozen=True)
class ImpairedDftOperator:
    """Stacked frequency rows k(f_m) s(f_m)^H mapping step differences to spectrum samples."""

    matrix: np.ndarray
    hw: HardwareProfile
    grid: FrequencyGrid

    @property
    def n_transitions(self) -> int:
        return self.matrix.shape[1]

    def apply(self, seq: AmplitudeSequence) -> np.ndarray:
        if seq.n_transitions != self.n_transitions:
            raise ValueError(
                f"sequence has {seq.n_transitions} transitions, operator expects "
                f"{self.n_transitions}"
            )
        return self.matrix @ difference_vector(seq)

    def condition_number(self) -> float:
        return float(np.linalg.cond(self.matrix))


def build_operator(grid: FrequencyGrid, hw: HardwareProfile, n: int) -> ImpairedDftOperator:
    """Materialize the M x N operator for n transitions on the given grid."""
    if isinstance(grid, (list, tuple, np.ndarray)):
        grid = FrequencyGrid(grid)
    f = grid.freqs
    if np.any(f == 0.0):
        raise ValueError("operator grid must not contain f = 0 (DC)")
    k = transition_kernel(f, hw.t_transition)
    # rows: k(f_m) * conj(s(f_m)) without forming per-row python loops
    phases = np.exp(-1j * 2 * np.pi * np.outer(f, hw.t_clock * np.arange(n)))
    return ImpairedDftOperator(matrix=k[:, None] * phases, hw=hw, grid=grid)


def forward(op: ImpairedDftOperator, seq: AmplitudeSequence) -> np.ndarray:
    """Spectrum samples X(f_m) of the stepped waveform of `seq` on the operator grid."""
    return op.apply(seq)


def spectrum_of_sequence(seq: AmplitudeSequence, hw: HardwareProfile, freqs) -> np.ndarray:
    """Spectrum samples of a stepped sequence without materializing the operator.

    Identical (to rounding) to `forward(build_operator(...), seq)` and to the
    analytic piecewise-linear transform of the synthesized waveform, but
    evaluated as k(f) * D(f) with D the steering sum of the step differences.
    On uniform grids D is computed with a chirp z-transform, which keeps
    dense-grid sweeps of long sequences cheap.
    """
    scalar = np.ndim(freqs) == 0
    f = np.atleast_1d(np.asarray(freqs, dtype=float))
    if np.any(f == 0.0):
        raise ValueError("spectrum_of_sequence excludes DC; use analytic_spectrum")
    d = difference_vector(seq)
    out = transition_kernel(f, hw.t_transition) * _steered_sum(d, hw.t_clock, f)
    return out[0] if scalar else out


def _steered_sum(x: np.ndarray, t_clock: float, f: np.ndarray) -> np.ndarray:
    """D(f) = sum_i x_i e^{-j 2 pi f i T_c}, czt-accelerated on uniform grids."""
    if f.size >= 64 and x.size >= 64:
        df = np.diff(f)
        if df.size and np.allclose(df, df[0], rtol=1e-12, atol=0.0):
            # z_k = a w^{-k} and X_k = sum_n x_n z_k^{-n}, so z_k must equal
            # e^{+j 2 pi f_k T_c} for f_k = f_0 + k df
            a = np.exp(1j * 2 * np.pi * f[0] * t_clock)
            w = np.exp(-1j * 2 * np.pi * df[0] * t_clock)
            return czt(x, m=f.size, w=w, a=a)
    out = np.empty(f.size, dtype=complex)
    step = max(1, 4_000_000 // x.size)
    idx = np.arange(x.size)
    for lo in range(0, f.size, step):
        phases = np.exp(-1j * 2 * np.pi * np.outer(f[lo : lo + step], t_clock * idx))
        out[lo : lo + step] = phases @ x
    return out


def inverse_design(
    targets,
    grid: FrequencyGrid,
    hw: HardwareProfile,
    a0: complex = 0.0,
):
    """Solve for the amplitude sequence whose stepped spectrum hits the targets.

    The grid must satisfy the inverse-mode band constraints (see
    `FrequencyGrid.validate_for_inverse`).  Solves the square dense system with
    partial pivoting, rebuilds amplitudes from the step differences by prefix
    sums anchored at a0, and reports the condition number.

    Returns:
        (seq, condition) where forward(seq) reproduces the targets within
        solver tolerance.

    Raises:
        IllConditionedError: condition estimate above 1e12.
        ValueError: out-of-band, DC, or non-square grids.
    """
    targets = np.asarray(targets, dtype=complex)
    if isinstance(grid, (list, tuple, np.ndarray)):
        grid = FrequencyGrid(grid)
    n = targets.size
    grid.validate_for_inverse(hw, n)
    op = build_operator(grid, hw, n)
    condition = op.condition_number()
    if not np.isfinite(condition) or condition > CONDITION_LIMIT:
        raise IllConditionedError(condition)
    d = np.linalg.solve(op.matrix, targets)
    # a_{i+1} = a_i - d_i
    amps = np.empty(n + 1, dtype=complex)
    amps[0] = a0
    amps[1:] = a0 - np.cumsum(d)
    return AmplitudeSequence(amps), condition


def harmonic_images(f_base: float, t_clock: float, k_max: int):
    """Image frequencies f_base + k/T_c for k = -k_max..-1, 1..k_max, ascending."""
    if not t_clock > 0:
        raise ValueError("t_clock must be > 0")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    ks = np.concatenate([np.arange(-k_max, 0), np.arange(1, k_max + 1)])
    return f_base + ks / t_clock
