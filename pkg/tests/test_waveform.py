"""Pulse models against the analytic piecewise-linear Fourier oracle."""

import numpy as np
import pytest

from tmasim.waveform import (
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

TS = 1e-6
TT = 0.05e-6


def rect_waveform(amp=1.0, t_symbol=TS):
    # a true rectangle up to a 1e-13-relative edge width (PLW cannot hold jumps)
    eps = 1e-13 * t_symbol
    return PiecewiseLinearWaveform(
        [0.0, eps, t_symbol - eps, t_symbol], [0.0, amp, amp, 0.0]
    )


class TestIdealPulse:
    def test_interior(self):
        assert eval_ideal_pulse(TS / 2, 1.0, TS) == 1.0

    def test_outside_support(self):
        assert eval_ideal_pulse(-TS, 1.0, TS) == 0.0

    def test_left_closed_step(self):
        assert eval_ideal_pulse(0.0, 2.0, TS) == 2.0
        assert eval_ideal_pulse(TS, 2.0, TS) == 0.0

    def test_bad_symbol_time(self):
        with pytest.raises(ValueError):
            eval_ideal_pulse(0.0, 1.0, 0.0)


class TestIdealSpectrum:
    def test_dc_is_area(self):
        assert spectrum_ideal(0.0, 1.0, TS) == pytest.approx(1e-6 + 0j)

    def test_nulls_at_symbol_rate_multiples(self):
        for k in (1, 2, 5):
            assert abs(spectrum_ideal(k / TS, 1.0, TS)) < 1e-20

    def test_matches_oracle(self):
        w = rect_waveform()
        f = np.array([0.3e6, 0.11e6, 2.77e6, 1e3])
        got = spectrum_ideal(f, 1.0, TS)
        want = analytic_spectrum(w, f)
        assert np.max(np.abs(got - want)) < 1e-12 * np.max(np.abs(want))


class TestRealPulse:
    def test_rising_ramp_midpoint(self):
        assert eval_real_pulse(TT / 2, 1.0, TS, TT) == pytest.approx(0.5)

    def test_flat_top(self):
        assert eval_real_pulse(TS / 2, 1.0, TS, TS / 10) == pytest.approx(1.0)

    def test_falling_ramp(self):
        assert eval_real_pulse(TS - TT / 4, 1.0, TS, TT) == pytest.approx(0.25)

    def test_overlapping_ramps_rejected(self):
        with pytest.raises(ValueError):
            eval_real_pulse(0.0, 1.0, TS, 0.6 * TS)


class TestRealSpectrumClosedForm:
    def test_dc_matches_documented_factor(self):
        # the documented form evaluates to -A(T_t + T_s) at DC
        assert spectrum_real_closed_form(0.0, 1.0, TS, TT) == pytest.approx(-(TT + TS))

    def test_suppressed_beyond_transition_knee(self):
        # at 10/T_t the transition sinc nulls the trapezoid spectrum
        t_symbol = 25.3 * TT
        f = 10.0 / TT
        assert abs(spectrum_real_closed_form(f, 1.0, t_symbol, TT)) < abs(
            spectrum_ideal(f, 1.0, t_symbol)
        )

    def test_discrepancy_report_vs_oracle(self):
        # the printed width/sign factor disagrees with the transform of the
        # actual trapezoid; the diagnostic must say so, not hide it
        f = np.linspace(1e3, 20 / TS, 997)
        diag = real_pulse_spectrum_discrepancy(1.0, TS, TT, f)
        assert not diag["agrees"]
        assert diag["max_scale_rel_error"] > 0.1

    def test_oracle_matches_edge_convolution_form(self):
        # ground truth: trapezoid = (1/T_t) rect(T_t) * A rect(T_s - T_t)
        w = PiecewiseLinearWaveform([0.0, TT, TS - TT, TS], [0.0, 1.0, 1.0, 0.0])
        f = np.array([0.137e6, 0.456e6, 3.21e6])
        sinc = lambda x: np.sinc(x / np.pi)  # noqa: E731
        want = (
            (TS - TT)
            * sinc(np.pi * f * TT)
            * sinc(np.pi * f * (TS - TT))
            * np.exp(-1j * np.pi * f * TS)
        )
        got = analytic_spectrum(w, f)
        assert np.max(np.abs(got - want)) < 1e-13 * np.max(np.abs(want))


class TestSteppedPulse:
    hw = HardwareProfile(t_transition=10e-9, t_clock=40e-9)

    def seq(self):
        rng = np.random.default_rng(11)
        return AmplitudeSequence(rng.normal(size=9) + 1j * rng.normal(size=9))

    def test_ramp_midpoint(self):
        seq = self.seq()
        a = seq.samples
        for i in (0, 3, 7):
            t = i * self.hw.t_clock + self.hw.t_transition / 2
            assert eval_stepped_pulse(t, seq, self.hw) == pytest.approx(
                (a[i] + a[i + 1]) / 2
            )

    def test_ramp_end_reaches_next_level(self):
        seq = self.seq()
        for i in (0, 4):
            t = i * self.hw.t_clock + self.hw.t_transition
            assert eval_stepped_pulse(t, seq, self.hw) == pytest.approx(seq.samples[i + 1])

    def test_single_clock_trapezoid_equals_real_pulse(self):
        # one-symbol sequence at T_c = T_t gives the continuous trapezoid
        tt = 10e-9
        hw = HardwareProfile(t_transition=tt, t_clock=tt)
        seq = AmplitudeSequence([0.0, 1.0, 1.0, 0.0])
        t = np.linspace(-tt, 4 * tt, 300)
        stepped = eval_stepped_pulse(t, seq, hw).real
        trap = eval_real_pulse(t, 1.0, 3 * tt, tt)
        assert np.max(np.abs(stepped - trap)) < 1e-12


class TestToPiecewiseLinear:
    def test_single_transition(self):
        hw = HardwareProfile(t_transition=10e-9, t_clock=10e-9)
        w = to_piecewise_linear(AmplitudeSequence([0.0, 1.0]), hw)
        assert w.times.size == 2
        np.testing.assert_allclose(w.times, [0.0, 10e-9])
        np.testing.assert_allclose(w.values, [0.0, 1.0])

    def test_trapezoid_shape(self):
        hw = HardwareProfile(t_transition=10e-9, t_clock=10e-9)
        w = to_piecewise_linear(AmplitudeSequence([0.0, 1.0, 1.0, 0.0]), hw)
        for t, v in [(0.0, 0.0), (10e-9, 1.0), (20e-9, 1.0), (30e-9, 0.0), (5e-9, 0.5)]:
            assert w(t) == pytest.approx(v)

    def test_pointwise_equal_to_eval(self):
        rng = np.random.default_rng(3)
        seq = AmplitudeSequence(rng.normal(size=17) + 1j * rng.normal(size=17))
        hw = HardwareProfile(t_transition=7e-9, t_clock=23e-9)
        w = to_piecewise_linear(seq, hw)
        t = rng.uniform(-2 * hw.t_clock, 20 * hw.t_clock, size=1000)
        direct = eval_stepped_pulse(t, seq, hw)
        assert np.max(np.abs(w(t) - direct)) < 1e-15 * np.max(np.abs(seq.samples))


class TestOracleProperties:
    hw = HardwareProfile(t_transition=8e-9, t_clock=25e-9)

    def random_waveform(self, seed, n=12, real=False):
        rng = np.random.default_rng(seed)
        vals = rng.normal(size=n + 1)
        if not real:
            vals = vals + 1j * rng.normal(size=n + 1)
        vals[0] = vals[-1] = 0.0
        return to_piecewise_linear(AmplitudeSequence(vals), self.hw)

    def test_linearity(self):
        w1 = self.random_waveform(1)
        w2 = self.random_waveform(2)
        a, b = 1.7 - 0.3j, -0.2 + 2.1j
        combo = PiecewiseLinearWaveform(w1.times, a * w1.values + b * w2.values)
        f = np.linspace(1e5, 5e7, 50)
        lhs = analytic_spectrum(combo, f)
        rhs = a * analytic_spectrum(w1, f) + b * analytic_spectrum(w2, f)
        assert np.max(np.abs(lhs - rhs)) < 1e-12 * np.max(np.abs(rhs))

    def test_conjugate_symmetry_for_real_waveforms(self):
        w = self.random_waveform(4, real=True)
        f = np.linspace(1e5, 4e7, 31)
        pos = analytic_spectrum(w, f)
        neg = analytic_spectrum(w, -f)
        assert np.max(np.abs(neg - np.conj(pos))) < 1e-13 * np.max(np.abs(pos))

    def test_time_shift_phase(self):
        w = self.random_waveform(5)
        tau = 137e-9
        f = np.linspace(1e5, 3e7, 23)
        shifted = analytic_spectrum(w.shifted(tau), f)
        expected = analytic_spectrum(w, f) * np.exp(-1j * 2 * np.pi * f * tau)
        assert np.max(np.abs(shifted - expected)) < 1e-12 * np.max(np.abs(expected))

    def test_trapezoid_rolls_off_faster_than_rectangle(self):
        # sample both spectra between nulls at f = (k + 1/2)/T_s: the ratio
        # |trapezoid/rectangle| must vanish as k grows (1/f^2 vs 1/f)
        tt = 0.04e-6
        w = PiecewiseLinearWaveform([0.0, tt, TS - tt, TS], [0.0, 1.0, 1.0, 0.0])
        ks = np.array([2, 8, 32, 128])
        f = (ks + 0.5) / TS
        ratio = np.abs(analytic_spectrum(w, f)) / np.abs(spectrum_ideal(f, 1.0, TS))
        assert np.all(np.diff(ratio) < 0)
        assert ratio[-1] < 0.05 * ratio[0]

    def test_dc_is_segment_area(self):
        w = self.random_waveform(6)
        dt = np.diff(w.times)
        area = np.sum(0.5 * dt * (w.values[:-1] + w.values[1:]))
        assert analytic_spectrum(w, 0.0) == pytest.approx(area)


class TestValidation:
    def test_profile_requires_clock_at_least_transition(self):
        with pytest.raises(ValueError):
            HardwareProfile(t_transition=2e-9, t_clock=1e-9)
        with pytest.raises(ValueError):
            HardwareProfile(t_transition=0.0, t_clock=1e-9)
        with pytest.raises(ValueError):
            HardwareProfile(t_transition=1e-9, t_clock=1e-9, phase_bits=0)

    def test_waveform_needs_increasing_times(self):
        with pytest.raises(ValueError):
            PiecewiseLinearWaveform([0.0, 0.0, 1.0], [0.0, 1.0, 0.0])
        with pytest.raises(ValueError):
            PiecewiseLinearWaveform([0.0], [1.0])

    def test_sequence_needs_two_samples(self):
        with pytest.raises(ValueError):
            AmplitudeSequence([1.0])
        with pytest.raises(ValueError):
            AmplitudeSequence([1.0, np.inf])
