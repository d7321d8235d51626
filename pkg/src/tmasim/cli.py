"""Command line experiment runner.

Usage:
    tmasim --experiment exp-rrc --out results/
    tmasim --experiment rrc-sweep --config my.ini --out results/ --seed 7

Config is an INI file; every key has a default matching the hardware
campaign (20 ns response time, 857 kHz clock, 8 updates per symbol,
root-raised-cosine rolloff 0.5, 6-bit registers).  Run with
--write-config PATH to dump the documented defaults.
"""

from __future__ import annotations

import argparse
import configparser
import os
import sys
from dataclasses import dataclass, field

from .waveform import HardwareProfile

DEFAULT_CONFIG = """\
# tmasim experiment configuration (defaults reproduce the hardware campaign)

[hardware]
t_transition_ns = 20.0     ; beamformer response time T_t
clock_rate_hz = 857000.0   ; weight update rate 1/T_c
phase_bits = 6             ; phase-shifter register width
amp_bits = 6               ; attenuator register width

[shaping]
rolloff = 0.5              ; RRC excess-bandwidth factor
sps = 8                    ; weight updates per symbol
span = 8                   ; RRC length in symbols (even)

[run]
n_symbols = 4000           ; random QPSK symbols per experiment
seed = 0                   ; generator seed recorded in outputs
quantized = true           ; apply 6-bit register quantization
oversample = 8             ; samples per clock in exported waveforms

[grid]
psd_harmonics = 3.5        ; PSD export span, in multiples of the clock rate
psd_points = 6001          ; points across the export span

[pulse-compare]
t_symbol_us = 1.0          ; rectangular pulse duration

[stepped-spectrum]
t_symbol_us = 1.0          ; trapezoid duration (rise/fall = T_s/4)
steps = 1,2,4,8            ; clock steps the transition is split into

[rrc-sweep]
t_transition_ns = 10.0     ; sweep-specific response time
t_symbol_ns = 500.0        ; fixed symbol period
clock_periods_ns = 50,33,20,10
betas = 0.25,0.5,1.0       ; rolloff-sensitivity report values

[clock-sweep]
rate_multipliers = 0.5,0.75,1.0,1.5,2.0
"""


@dataclass
class ExperimentConfig:
    """Parsed experiment configuration with campaign defaults."""

    hw: HardwareProfile = field(
        default_factory=lambda: HardwareProfile(20e-9, 1.0 / 857e3, 6, 6)
    )
    rolloff: float = 0.5
    sps: int = 8
    span: int = 8
    n_symbols: int = 4000
    seed: int = 0
    quantized: bool = True
    oversample: int = 8
    psd_harmonics: float = 3.5
    psd_points: int = 6001
    pulse_t_symbol: float = 1e-6
    stepped_t_symbol: float = 1e-6
    stepped_steps: tuple = (1, 2, 4, 8)
    sweep_t_transition: float = 10e-9
    sweep_t_symbol: float = 500e-9
    sweep_clock_periods: tuple = (50e-9, 33e-9, 20e-9, 10e-9)
    sweep_betas: tuple = (0.25, 0.5, 1.0)
    clock_multipliers: tuple = (0.5, 0.75, 1.0, 1.5, 2.0)

    def describe(self) -> list[str]:
        return [
            f"t_transition = {self.hw.t_transition * 1e9:.3f} ns",
            f"clock rate = {self.hw.clock_rate / 1e3:.3f} kHz (T_c = {self.hw.t_clock * 1e6:.6f} us)",
            f"registers = {self.hw.phase_bits}-bit phase, {self.hw.amp_bits}-bit amplitude",
            f"rolloff = {self.rolloff}, sps = {self.sps}, span = {self.span}",
            f"n_symbols = {self.n_symbols}, seed = {self.seed}, quantized = {self.quantized}",
        ]


class ConfigError(ValueError):
    """Malformed config file; message carries section/key diagnostics."""


def _get(parser, section, key, cast, default):
    if not parser.has_option(section, key):
        return default
    raw = parser.get(section, key)
    try:
        return cast(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key} = {raw!r}: {exc}") from exc


def _bool(raw: str) -> bool:
    val = raw.strip().lower()
    if val in ("1", "true", "yes", "on"):
        return True
    if val in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _float_list(raw: str) -> tuple:
    return tuple(float(v) for v in raw.split(","))


def _int_list(raw: str) -> tuple:
    return tuple(int(v) for v in raw.split(","))


def load_config(path: str | None) -> ExperimentConfig:
    cfg = ExperimentConfig()
    if path is None:
        return cfg
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc

    t_transition = _get(parser, "hardware", "t_transition_ns", float, 20.0) * 1e-9
    clock_rate = _get(parser, "hardware", "clock_rate_hz", float, 857e3)
    phase_bits = _get(parser, "hardware", "phase_bits", int, 6)
    amp_bits = _get(parser, "hardware", "amp_bits", int, 6)
    try:
        cfg.hw = HardwareProfile(t_transition, 1.0 / clock_rate, phase_bits, amp_bits)
    except ValueError as exc:
        raise ConfigError(f"[hardware]: {exc}") from exc

    cfg.rolloff = _get(parser, "shaping", "rolloff", float, cfg.rolloff)
    cfg.sps = _get(parser, "shaping", "sps", int, cfg.sps)
    cfg.span = _get(parser, "shaping", "span", int, cfg.span)
    cfg.n_symbols = _get(parser, "run", "n_symbols", int, cfg.n_symbols)
    cfg.seed = _get(parser, "run", "seed", int, cfg.seed)
    cfg.quantized = _get(parser, "run", "quantized", _bool, cfg.quantized)
    cfg.oversample = _get(parser, "run", "oversample", int, cfg.oversample)
    cfg.psd_harmonics = _get(parser, "grid", "psd_harmonics", float, cfg.psd_harmonics)
    cfg.psd_points = _get(parser, "grid", "psd_points", int, cfg.psd_points)
    cfg.pulse_t_symbol = _get(parser, "pulse-compare", "t_symbol_us", float, 1.0) * 1e-6
    cfg.stepped_t_symbol = _get(parser, "stepped-spectrum", "t_symbol_us", float, 1.0) * 1e-6
    cfg.stepped_steps = _get(parser, "stepped-spectrum", "steps", _int_list, cfg.stepped_steps)
    cfg.sweep_t_transition = _get(parser, "rrc-sweep", "t_transition_ns", float, 10.0) * 1e-9
    cfg.sweep_t_symbol = _get(parser, "rrc-sweep", "t_symbol_ns", float, 500.0) * 1e-9
    periods = _get(parser, "rrc-sweep", "clock_periods_ns", _float_list, (50.0, 33.0, 20.0, 10.0))
    cfg.sweep_clock_periods = tuple(p * 1e-9 for p in periods)
    cfg.sweep_betas = _get(parser, "rrc-sweep", "betas", _float_list, cfg.sweep_betas)
    cfg.clock_multipliers = _get(parser, "clock-sweep", "rate_multipliers", _float_list, cfg.clock_multipliers)
    return cfg


def run_experiment(name: str, cfg: ExperimentConfig, out_dir: str) -> int:
    """Run one named experiment; writes artifacts + summary, returns exit status."""
    from . import experiments
    from .report import Summary

    runners = {
        "pulse-compare": experiments.pulse_compare,
        "stepped-spectrum": experiments.stepped_spectrum,
        "rrc-sweep": experiments.rrc_sweep,
        "exp-qpsk": experiments.exp_qpsk,
        "exp-rrc": experiments.exp_rrc,
        "clock-sweep": experiments.clock_sweep,
    }
    if name not in runners:
        raise ValueError(
            f"unknown experiment {name!r}; choose from {', '.join(experiments.EXPERIMENTS)}"
        )
    os.makedirs(out_dir, exist_ok=True)
    summary = Summary(name, cfg.describe())
    runners[name](cfg, out_dir, summary)
    path = summary.write(out_dir)
    print(f"wrote {path}")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="tmasim", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--experiment", choices=[
        "pulse-compare", "stepped-spectrum", "rrc-sweep", "exp-qpsk", "exp-rrc", "clock-sweep",
    ])
    ap.add_argument("--config", help="INI config file (defaults used when omitted)")
    ap.add_argument("--out", default="tmasim-out", help="output directory")
    ap.add_argument("--seed", type=int, help="override the config seed")
    ap.add_argument("--quantized", type=_bool, help="override register quantization (true/false)")
    ap.add_argument("--bits", type=int, help="override both register widths")
    ap.add_argument("--write-config", metavar="PATH", help="write the documented default config and exit")
    args = ap.parse_args(argv)

    if args.write_config:
        with open(args.write_config, "w") as fh:
            fh.write(DEFAULT_CONFIG)
        print(f"wrote {args.write_config}")
        return 0
    if not args.experiment:
        ap.error("--experiment is required (or use --write-config)")

    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if args.seed is not None:
        cfg.seed = args.seed
    if args.quantized is not None:
        cfg.quantized = args.quantized
    if args.bits is not None:
        cfg.hw = HardwareProfile(cfg.hw.t_transition, cfg.hw.t_clock, args.bits, args.bits)

    try:
        return run_experiment(args.experiment, cfg, args.out)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
