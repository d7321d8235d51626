"""PSD normalization and harmonic-suppression measurements."""

import numpy as np
import pytest

from tmasim import metrics
from tmasim.impaired_dft import spectrum_of_sequence
from tmasim.shaping import design_rrc, shape_symbols
from tmasim.txchain import QPSK_POINTS
from tmasim.waveform import (
    AmplitudeSequence,
    HardwareProfile,
    PiecewiseLinearWaveform,
    to_piecewise_linear,
)


def rect_waveform(amp=1.0, t_symbol=1e-6):
    eps = 1e-13 * t_symbol
    return PiecewiseLinearWaveform([0.0, eps, t_symbol - eps, t_symbol], [0.0, amp, amp, 0.0])


def shaped_stream(n_symbols, seed, hw, sps, beta=0.5, span=8):
    rng = np.random.default_rng(seed)
    symbols = QPSK_POINTS[rng.integers(0, 4, n_symbols)]
    shaped = shape_symbols(symbols, design_rrc(beta, sps, span))
    return AmplitudeSequence(shaped.samples / np.abs(shaped.samples).max())


class TestPsd:
    def test_rectangle_mainlobe_and_sidelobe(self):
        t_symbol = 1e-6
        w = rect_waveform(t_symbol=t_symbol)
        f = np.linspace(0.0, 2.5 / t_symbol, 20001)
        p = metrics.psd(w, f)
        assert p[0] == pytest.approx(0.0)  # DC is the peak
        # first sidelobe of sinc^2 sits 13.26 dB down
        lobe = p[(f > 1.0 / t_symbol) & (f < 2.0 / t_symbol)]
        assert lobe.max() == pytest.approx(-13.26, abs=0.05)

    def test_scale_invariance(self):
        w = rect_waveform()
        f = np.linspace(1e3, 3e6, 500)
        np.testing.assert_allclose(metrics.psd(w, f), metrics.psd(w.scaled(7.3 - 1j), f), atol=1e-9)

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            metrics.psd(rect_waveform(), np.array([]))

    def test_harmonic_images_visible(self):
        hw = HardwareProfile(20e-9, 1.0 / 857e3)
        seq = shaped_stream(400, 0, hw, sps=8)
        w = to_piecewise_linear(seq, hw)
        symbol_rate = 1.0 / (8 * hw.t_clock)
        half = symbol_rate * 1.5 / 2
        # half-offset survey grid so no bin lands on the image notch
        df = half
        f = (np.arange(1, 260) + 0.5) * df
        p = metrics.psd(w, f)
        spec_fn = lambda fr: spectrum_of_sequence(seq, hw, fr)  # noqa: E731
        p_fast = 10 * np.log10(np.abs(spec_fn(f)) ** 2)
        p_fast -= p_fast.max()
        np.testing.assert_allclose(p, p_fast, atol=1e-6)
        for k in (1, 2, 3):
            centre = k / hw.t_clock
            zone = (f > centre - 6 * df) & (f < centre + 6 * df)
            i = np.where(zone)[0][np.argmax(p[zone])]
            assert abs(f[i] - centre) <= df


class TestHarmonicSuppression:
    hw = HardwareProfile(10e-9, 50e-9)

    def suppression(self, seq, hw, symbol_rate, **kw):
        w = to_piecewise_linear(seq, hw)
        return metrics.harmonic_suppression(
            w, symbol_rate, hw.t_clock,
            spectrum_fn=lambda f: spectrum_of_sequence(seq, hw, f), **kw,
        )

    def test_monotone_in_clock_period(self):
        # shrinking the clock period at fixed symbol period raises suppression
        t_symbol = 500e-9
        rng = np.random.default_rng(1)
        symbols = QPSK_POINTS[rng.integers(0, 4, 300)]
        values = []
        for sps in (10, 15, 25):
            t_clock = t_symbol / sps
            hw = HardwareProfile(10e-9, t_clock)
            shaped = shape_symbols(symbols, design_rrc(0.5, sps, 8))
            seq = AmplitudeSequence(shaped.samples / np.abs(shaped.samples).max())
            values.append(self.suppression(seq, hw, 1.0 / t_symbol, rolloff=0.5))
        assert values[0] < values[1] < values[2]

    def test_unshaped_stream_weakly_suppressed(self):
        # raw symbol steps spread energy into the image bands: under 15 dB.
        # At one update per symbol the occupied band reaches the clock rate,
        # so the marker band must be narrower than the shaped default.
        rng = np.random.default_rng(2)
        symbols = QPSK_POINTS[rng.integers(0, 4, 400)]
        hw = HardwareProfile(10e-9, 500e-9)
        seq = AmplitudeSequence(np.concatenate([[0.0 + 0.0j], symbols, [0.0 + 0.0j]]))
        symbol_rate = 1.0 / 500e-9
        value = self.suppression(
            seq, hw, symbol_rate, rolloff=0.5, band_halfwidth=0.4 * symbol_rate
        )
        assert value < 15.0

    def test_seed_stability_integrated(self):
        # band-integrated suppression varies well under 1 dB across draws
        hw = HardwareProfile(20e-9, 1.0 / 857e3)
        symbol_rate = 857e3 / 8
        vals = [
            self.suppression(shaped_stream(1200, seed, hw, sps=8), hw, symbol_rate,
                             rolloff=0.5, integrated=True)
            for seed in range(4)
        ]
        assert max(vals) - min(vals) < 1.0

    def test_band_overlap_rejected(self):
        seq = shaped_stream(50, 3, HardwareProfile(10e-9, 50e-9), sps=10)
        w = to_piecewise_linear(seq, HardwareProfile(10e-9, 50e-9))
        with pytest.raises(ValueError, match="overlap"):
            # symbol rate so large the occupied band swallows the harmonic
            metrics.harmonic_suppression(w, 30e6, 50e-9, rolloff=0.5)

    def test_bad_harmonic_index(self):
        seq = shaped_stream(50, 4, self.hw, sps=10)
        w = to_piecewise_linear(seq, self.hw)
        with pytest.raises(ValueError):
            metrics.harmonic_suppression(w, 2e6, self.hw.t_clock, k=0)
