"""Named experiment reproductions driven by the CLI.

Each experiment builds its transmit chain from the config, measures the
quantities the hardware campaign reported, and writes CSV artifacts, PNG
figures, and a text summary into the output directory.  All randomness comes
from the seeded generator recorded in the summary, so outputs are
reproducible byte for byte.
"""

from __future__ import annotations

import os

import numpy as np

from . import metrics, report
from .impaired_dft import harmonic_images, spectrum_of_sequence
from .rxsim import receive, synthesize
from .shaping import design_rrc, shape_symbols
from .txchain import QPSK_POINTS, build_weight_sequence
from .waveform import (
    AmplitudeSequence,
    HardwareProfile,
    PiecewiseLinearWaveform,
    analytic_spectrum,
    eval_ideal_pulse,
    real_pulse_spectrum_discrepancy,
    spectrum_ideal,
    spectrum_real_closed_form,
    to_piecewise_linear,
)

EXPERIMENTS = [
    "pulse-compare",
    "stepped-spectrum",
    "rrc-sweep",
    "exp-qpsk",
    "exp-rrc",
    "clock-sweep",
]

# First-harmonic suppression readings reported for the clock-period sweep
# (dB, keyed by nominal clock period in ns at T_t = 10 ns, T_s = 500 ns).
SWEEP_REFERENCE_DB = {50: 27.0, 33: 31.0, 20: 36.0, 10: 45.0}
HARMONIC_REFERENCE_DB = 29.0
SUPPRESSION_TOL_DB = 3.0


def random_qpsk(n_symbols: int, rng: np.random.Generator) -> np.ndarray:
    return QPSK_POINTS[rng.integers(0, 4, n_symbols)]


def shaped_chain(symbols, hw: HardwareProfile, filt, quantized: bool):
    """Shape, normalize to full scale, build weights; returns (seq, weights)."""
    shaped = shape_symbols(symbols, filt)
    norm = shaped.samples / np.abs(shaped.samples).max()
    weights = build_weight_sequence(norm, hw, quantized=quantized)
    return AmplitudeSequence(weights.samples()), weights


def unshaped_chain(symbols, hw: HardwareProfile, sps: int, quantized: bool):
    """Hold each symbol for sps clocks, idle before and after; unit full scale."""
    held = np.concatenate(
        [[0.0 + 0.0j], np.repeat(np.asarray(symbols, dtype=complex), sps), [0.0 + 0.0j]]
    )
    weights = build_weight_sequence(held, hw, quantized=quantized)
    return AmplitudeSequence(weights.samples()), weights


def sequence_spectrum_fn(seq: AmplitudeSequence, hw: HardwareProfile):
    """Exact stepped-waveform spectrum, operator path (czt on uniform grids)."""
    return lambda f: spectrum_of_sequence(seq, hw, f)


def measure_suppression(
    seq: AmplitudeSequence,
    hw: HardwareProfile,
    symbol_rate: float,
    rolloff: float,
    k: int = 1,
    integrated: bool = False,
) -> float:
    w = to_piecewise_linear(seq, hw)
    return metrics.harmonic_suppression(
        w,
        symbol_rate,
        hw.t_clock,
        k=k,
        rolloff=rolloff,
        integrated=integrated,
        spectrum_fn=sequence_spectrum_fn(seq, hw),
    )


def export_psd(seq, hw, out_dir, name, span_harmonics, n_points):
    """PSD (dB rel peak) across +-span_harmonics/T_c, CSV + figure."""
    f_max = span_harmonics / hw.t_clock
    f = np.linspace(-f_max, f_max, int(n_points))
    f = f[f != 0.0]
    x = spectrum_of_sequence(seq, hw, f)
    p = np.abs(x) ** 2
    p_db = 10.0 * np.log10(p / p.max())
    report.write_csv(os.path.join(out_dir, f"{name}_psd.csv"), ["f_hz", "psd_db"], [f, p_db])
    report.write_csv(
        os.path.join(out_dir, f"{name}_spectrum.csv"),
        ["f_hz", "re", "im", "mag_db"],
        [f, x.real, x.imag, 20.0 * np.log10(np.abs(x) / np.abs(x).max())],
    )
    fig, ax = report.new_axes()
    ax.plot(f / 1e6, p_db, lw=0.7)
    for fi in harmonic_images(0.0, hw.t_clock, int(span_harmonics)):
        ax.axvline(fi / 1e6, color="0.8", lw=0.6, zorder=0)
    ax.set_xlabel("frequency (MHz)")
    ax.set_ylabel("PSD (dB rel. peak)")
    ax.set_ylim(bottom=max(p_db.min(), -130.0))
    ax.grid(alpha=0.3)
    report.save_figure(fig, os.path.join(out_dir, f"{name}_psd.png"))
    return f, p_db


def export_constellation(rx, out_dir, name):
    report.write_csv(
        os.path.join(out_dir, f"{name}_constellation.csv"),
        ["re", "im", "ref_re", "ref_im"],
        [rx.symbols.real, rx.symbols.imag, rx.reference.real, rx.reference.imag],
    )
    fig, ax = report.new_axes(width=4.2, height=4.2)
    ax.plot(rx.symbols.real, rx.symbols.imag, ".", ms=2, alpha=0.6, label="received")
    ax.plot(rx.reference.real, rx.reference.imag, "r+", ms=9, mew=1.5, label="reference")
    ax.set_xlabel("I")
    ax.set_ylabel("Q")
    ax.set_aspect("equal")
    ax.grid(alpha=0.3)
    ax.legend(loc="upper right", fontsize=8)
    report.save_figure(fig, os.path.join(out_dir, f"{name}_constellation.png"))


def export_waveform(w: PiecewiseLinearWaveform, t_step, out_dir, name):
    t = np.arange(w.times[0], w.times[-1] + t_step / 2, t_step)
    v = w(t)
    report.write_csv(os.path.join(out_dir, f"{name}_waveform.csv"), ["time_s", "re", "im"], [t, v.real, v.imag])
    return t, v


def export_weights(weights, out_dir, name):
    if not weights.quantized:
        return
    idx = np.arange(len(weights))
    report.write_csv(
        os.path.join(out_dir, f"{name}_weights.csv"),
        ["index", "phase_code", "amp_code"],
        [idx, weights.phase_codes, weights.amp_codes],
    )


# ---------------------------------------------------------------------------
# experiments


def pulse_compare(cfg, out_dir, summary):
    """Ideal vs linear-transition pulse, time domain and spectra."""
    t_symbol = cfg.pulse_t_symbol
    t_transition = cfg.hw.t_transition
    amp = 1.0

    t = np.linspace(-0.1 * t_symbol, 1.1 * t_symbol, 1201)
    ideal = eval_ideal_pulse(t, amp, t_symbol)
    trap = PiecewiseLinearWaveform(
        [0.0, t_transition, t_symbol - t_transition, t_symbol], [0.0, amp, amp, 0.0]
    )
    report.write_csv(
        os.path.join(out_dir, "pulses_time.csv"),
        ["time_s", "ideal", "realistic"],
        [t, ideal, trap(t).real],
    )

    f_max = max(30.0 / t_symbol, 3.0 / t_transition)
    f = np.linspace(0.0, f_max, 12001)
    x_ideal = spectrum_ideal(f, amp, t_symbol)
    x_real = analytic_spectrum(trap, f)
    x_printed = spectrum_real_closed_form(f, amp, t_symbol, t_transition)
    floor = amp * t_symbol * 1e-10
    db = lambda x: 20.0 * np.log10(np.maximum(np.abs(x), floor) / (amp * t_symbol))  # noqa: E731
    report.write_csv(
        os.path.join(out_dir, "pulses_spectrum.csv"),
        ["f_hz", "ideal_db", "realistic_db", "documented_form_db"],
        [f, db(x_ideal), db(x_real), db(x_printed)],
    )

    fig, axes = report.new_axes(2, 1)
    axes[0].plot(t * 1e6, ideal, label="ideal")
    axes[0].plot(t * 1e6, trap(t).real, label="linear transition")
    axes[0].set_xlabel("time (us)")
    axes[0].set_ylabel("amplitude")
    axes[0].legend(fontsize=8)
    axes[0].grid(alpha=0.3)
    axes[1].plot(f * 1e-6, db(x_ideal), label="ideal")
    axes[1].plot(f * 1e-6, db(x_real), label="linear transition")
    axes[1].set_xlabel("frequency (MHz)")
    axes[1].set_ylabel("|X| (dB rel. A*Ts)")
    axes[1].set_ylim(-120, 5)
    axes[1].legend(fontsize=8)
    axes[1].grid(alpha=0.3)
    report.save_figure(fig, os.path.join(out_dir, "pulse_compare.png"))

    # suppression beyond the transition knee
    knee = 1.0 / t_transition
    sel = f > knee
    extra = db(x_ideal)[sel] - db(x_real)[sel]
    summary.add(f"transition knee 1/T_t: {knee / 1e6:.3f} MHz")
    summary.measured("median extra rolloff beyond knee", float(np.median(extra)), "dB")

    diag = real_pulse_spectrum_discrepancy(amp, t_symbol, t_transition, f[f > 0])
    summary.add(
        "documented trapezoid closed form vs analytic oracle: "
        f"max deviation {diag['max_scale_rel_error']:.3e} of the spectral peak "
        f"({'agrees' if diag['agrees'] else 'DISAGREES: width/sign factor differs; oracle is ground truth'})"
    )


def stepped_spectrum(cfg, out_dir, summary):
    """Trapezoid synthesized with its transition split into 1/2/4/8 clock steps."""
    t_symbol = cfg.stepped_t_symbol
    rise = t_symbol / 4.0
    t_transition = cfg.hw.t_transition
    amp = 1.0
    probe = 3.0 / t_symbol

    def target_level(t):
        up = np.clip(t / rise, 0.0, 1.0)
        down = np.clip((t_symbol - t) / rise, 0.0, 1.0)
        return amp * np.minimum(up, down)

    fig, axes = report.new_axes(2, 1)
    f = np.linspace(1e3, 10.0 / t_symbol, 4001)
    probe_levels = []
    for steps in cfg.stepped_steps:
        t_clock = rise / steps
        if t_transition > t_clock:
            raise ValueError(
                f"t_transition {t_transition} exceeds the step clock {t_clock}; "
                "reduce hardware.t_transition_ns or the step count"
            )
        grid = np.arange(0.0, t_symbol + t_clock / 2, t_clock)
        amps = target_level(grid).astype(complex)
        amps[0] = 0.0
        amps[-1] = 0.0
        seq = AmplitudeSequence(amps)
        hw = HardwareProfile(t_transition, t_clock, cfg.hw.phase_bits, cfg.hw.amp_bits)
        w = to_piecewise_linear(seq, hw)
        t_plot = np.linspace(-0.05 * t_symbol, 1.05 * t_symbol, 1200)
        axes[0].plot(t_plot * 1e6, w(t_plot).real, label=f"{steps} step(s)")
        x = np.abs(spectrum_of_sequence(seq, hw, f))
        axes[1].plot(f * 1e-6, 20 * np.log10(x / x.max()), lw=0.8, label=f"{steps} step(s)")
        level = float(np.abs(spectrum_of_sequence(seq, hw, np.array([probe]))[0]))
        probe_levels.append(level)
        report.write_csv(
            os.path.join(out_dir, f"stepped_{steps}_spectrum.csv"),
            ["f_hz", "mag"],
            [f, x],
        )
    axes[0].set_xlabel("time (us)")
    axes[0].set_ylabel("amplitude")
    axes[0].legend(fontsize=8)
    axes[0].grid(alpha=0.3)
    axes[1].set_xlabel("frequency (MHz)")
    axes[1].set_ylabel("|X| (dB rel. peak)")
    axes[1].set_ylim(-100, 3)
    axes[1].legend(fontsize=8)
    axes[1].grid(alpha=0.3)
    report.save_figure(fig, os.path.join(out_dir, "stepped_spectrum.png"))

    report.write_csv(
        os.path.join(out_dir, "stepped_sideband_levels.csv"),
        ["steps", "mag_at_3_over_ts"],
        [np.array(cfg.stepped_steps, dtype=float), np.array(probe_levels)],
    )
    summary.add(f"sideband probe at 3/T_s = {probe / 1e6:.3f} MHz")
    for steps, level in zip(cfg.stepped_steps, probe_levels):
        summary.add(f"  {steps} step(s): |X| = {level:.6e}")
    mono = all(a > b for a, b in zip(probe_levels, probe_levels[1:]))
    summary.add(f"sideband level decreases monotonically with step count: {mono}")


def rrc_sweep(cfg, out_dir, summary):
    """Clock-period sweep of first-harmonic suppression for an RRC-shaped stream."""
    t_symbol = cfg.sweep_t_symbol
    t_transition = cfg.sweep_t_transition
    rng = np.random.default_rng(cfg.seed)
    symbols = random_qpsk(cfg.n_symbols, rng)
    report.write_csv(
        os.path.join(out_dir, "symbols.csv"),
        ["re", "im"],
        [symbols.real, symbols.imag],
    )

    fig, ax = report.new_axes(height=3.6)
    rows = []
    for tc_nominal in cfg.sweep_clock_periods:
        sps = int(round(t_symbol / tc_nominal))
        t_clock = t_symbol / sps
        hw = HardwareProfile(t_transition, t_clock, cfg.hw.phase_bits, cfg.hw.amp_bits)
        filt = design_rrc(cfg.rolloff, sps, cfg.span)
        seq, _ = shaped_chain(symbols, hw, filt, cfg.quantized)
        supp = measure_suppression(seq, hw, 1.0 / t_symbol, cfg.rolloff)
        supp_int = measure_suppression(seq, hw, 1.0 / t_symbol, cfg.rolloff, integrated=True)
        rows.append((tc_nominal, sps, supp, supp_int))

        fh = 1.0 / t_clock
        f = np.linspace(1e4, 1.25 * fh, 4000)
        x = np.abs(spectrum_of_sequence(seq, hw, f)) ** 2
        ax.plot(f / 1e6, 10 * np.log10(x / x.max()), lw=0.7,
                label=f"T_c = {tc_nominal * 1e9:.0f} ns")

    ax.set_xlabel("frequency (MHz)")
    ax.set_ylabel("PSD (dB rel. peak)")
    ax.set_ylim(-110, 3)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    report.save_figure(fig, os.path.join(out_dir, "rrc_sweep_psd.png"))

    report.write_csv(
        os.path.join(out_dir, "rrc_sweep_suppression.csv"),
        ["t_clock_ns", "sps", "suppression_db", "suppression_integrated_db"],
        [
            np.array([r[0] * 1e9 for r in rows]),
            np.array([float(r[1]) for r in rows]),
            np.array([r[2] for r in rows]),
            np.array([r[3] for r in rows]),
        ],
    )

    out_of_tol = []
    for tc_nominal, sps, supp, supp_int in rows:
        key = int(round(tc_nominal * 1e9))
        target = SWEEP_REFERENCE_DB.get(key)
        summary.measured(
            f"first-harmonic suppression at T_c={key}ns (sps={sps})",
            supp,
            "dB",
            target=target,
            tol=SUPPRESSION_TOL_DB,
        )
        summary.add(f"  integrated-power variant: {supp_int:.3f} dB")
        if target is not None and abs(supp - target) > SUPPRESSION_TOL_DB:
            out_of_tol.append(tc_nominal)

    if out_of_tol:
        summary.add("")
        summary.add("rolloff-sensitivity report (deviation beyond tolerance triggers it):")
        beta_rows = beta_sensitivity(cfg, symbols, out_of_tol)
        for tc_nominal, beta, supp in beta_rows:
            summary.add(
                f"  T_c={tc_nominal * 1e9:6.1f} ns  beta={beta:4.2f}: {supp:7.2f} dB"
            )
        report.write_csv(
            os.path.join(out_dir, "beta_sensitivity.csv"),
            ["t_clock_ns", "beta", "suppression_db"],
            [
                np.array([r[0] * 1e9 for r in beta_rows]),
                np.array([r[1] for r in beta_rows]),
                np.array([r[2] for r in beta_rows]),
            ],
        )


def beta_sensitivity(cfg, symbols, clock_periods):
    t_symbol = cfg.sweep_t_symbol
    t_transition = cfg.sweep_t_transition
    rows = []
    for tc_nominal in clock_periods:
        sps = int(round(t_symbol / tc_nominal))
        t_clock = t_symbol / sps
        hw = HardwareProfile(t_transition, t_clock, cfg.hw.phase_bits, cfg.hw.amp_bits)
        for beta in cfg.sweep_betas:
            filt = design_rrc(beta, sps, cfg.span)
            seq, _ = shaped_chain(symbols, hw, filt, cfg.quantized)
            supp = measure_suppression(seq, hw, 1.0 / t_symbol, beta)
            rows.append((tc_nominal, beta, supp))
    return rows


def exp_qpsk(cfg, out_dir, summary):
    """Direct QPSK (one clock per symbol), quantized weights, constellation + PSD."""
    rng = np.random.default_rng(cfg.seed)
    symbols = random_qpsk(cfg.n_symbols, rng)
    report.write_csv(os.path.join(out_dir, "symbols.csv"), ["re", "im"], [symbols.real, symbols.imag])

    hw = cfg.hw
    seq, weights = unshaped_chain(symbols, hw, 1, cfg.quantized)
    export_weights(weights, out_dir, "exp_qpsk")
    w = synthesize(weights)
    rx = receive(w, None, hw, cfg.n_symbols, symbols, sps=1)
    export_constellation(rx, out_dir, "exp_qpsk")
    export_psd(seq, hw, out_dir, "exp_qpsk", cfg.psd_harmonics, cfg.psd_points)
    t_step = hw.t_clock / max(cfg.oversample, 4)
    export_waveform(w, t_step, out_dir, "exp_qpsk")

    summary.measured("phase error (RMS)", rx.phase_error_rms_deg, "deg")
    summary.measured("EVM (RMS)", rx.evm_rms_pct, "%")
    summary.add(
        "note: QPSK phases land exactly on the 6-bit phase grid, so the "
        "quantization-induced phase error is zero up to rounding; the "
        "hardware reading (2.11 deg) includes oscillator phase noise this "
        "noise-free simulation does not model"
    )


def exp_rrc(cfg, out_dir, summary):
    """RRC-shaped stream at SPS updates per symbol: harmonic level + constellation."""
    rng = np.random.default_rng(cfg.seed)
    symbols = random_qpsk(cfg.n_symbols, rng)
    report.write_csv(os.path.join(out_dir, "symbols.csv"), ["re", "im"], [symbols.real, symbols.imag])

    hw = cfg.hw
    filt = design_rrc(cfg.rolloff, cfg.sps, cfg.span)
    report.write_csv(os.path.join(out_dir, "rrc_taps.csv"), ["tap"], [filt.taps])

    seq, weights = shaped_chain(symbols, hw, filt, cfg.quantized)
    export_weights(weights, out_dir, "exp_rrc")
    w = synthesize(weights)
    rx = receive(w, filt, hw, cfg.n_symbols, symbols)
    export_constellation(rx, out_dir, "exp_rrc")
    export_psd(seq, hw, out_dir, "exp_rrc", cfg.psd_harmonics, cfg.psd_points)

    symbol_rate = 1.0 / (cfg.sps * hw.t_clock)
    supp = measure_suppression(seq, hw, symbol_rate, cfg.rolloff)
    supp_int = measure_suppression(seq, hw, symbol_rate, cfg.rolloff, integrated=True)

    summary.add(f"occupied baseband bandwidth (symbol rate): {symbol_rate / 1e3:.1f} kHz")
    summary.measured(
        "first-harmonic suppression",
        supp,
        "dB",
        target=HARMONIC_REFERENCE_DB,
        tol=SUPPRESSION_TOL_DB,
    )
    summary.add(f"  integrated-power variant: {supp_int:.3f} dB")
    summary.measured("phase error (RMS)", rx.phase_error_rms_deg, "deg")
    summary.measured("EVM (RMS)", rx.evm_rms_pct, "%")

    # reference chain without shaping for the phase-error ordering
    seq_u, weights_u = unshaped_chain(symbols, hw, cfg.sps, cfg.quantized)
    rx_u = receive(synthesize(weights_u), None, hw, cfg.n_symbols, symbols, sps=cfg.sps)
    summary.measured("phase error without shaping (RMS)", rx_u.phase_error_rms_deg, "deg")
    if cfg.quantized:
        summary.add(
            f"shaped > unshaped phase error (register quantization acts on many "
            f"more sample values): {rx.phase_error_rms_deg > rx_u.phase_error_rms_deg}"
        )

    fh = harmonic_images(0.0, hw.t_clock, 1)
    summary.add(f"first harmonic images at {fh[0] / 1e3:.1f} / {fh[1] / 1e3:.1f} kHz")


def clock_sweep(cfg, out_dir, summary):
    """Suppression across clock rates at fixed SPS (bandwidth scales with clock)."""
    rng = np.random.default_rng(cfg.seed)
    symbols = random_qpsk(cfg.n_symbols, rng)

    base_rate = cfg.hw.clock_rate
    filt = design_rrc(cfg.rolloff, cfg.sps, cfg.span)
    rows = []
    for mult in cfg.clock_multipliers:
        rate = base_rate * mult
        hw = HardwareProfile(cfg.hw.t_transition, 1.0 / rate, cfg.hw.phase_bits, cfg.hw.amp_bits)
        seq, _ = shaped_chain(symbols, hw, filt, cfg.quantized)
        symbol_rate = rate / cfg.sps
        supp = measure_suppression(seq, hw, symbol_rate, cfg.rolloff)
        rows.append((rate, supp))
        summary.measured(f"suppression at clock {rate / 1e3:.1f} kHz", supp, "dB")

    supps = np.array([r[1] for r in rows])
    spread = float(supps.max() - supps.min())
    report.write_csv(
        os.path.join(out_dir, "clock_sweep.csv"),
        ["clock_hz", "suppression_db"],
        [np.array([r[0] for r in rows]), supps],
    )
    summary.measured("suppression spread across rates", spread, "dB")
    summary.add(f"flat within +/-2 dB: {spread <= 4.0}")

    fig, ax = report.new_axes()
    ax.plot([r[0] / 1e3 for r in rows], supps, "o-")
    ax.set_xlabel("clock rate (kHz)")
    ax.set_ylabel("first-harmonic suppression (dB)")
    ax.grid(alpha=0.3)
    report.save_figure(fig, os.path.join(out_dir, "clock_sweep.png"))
