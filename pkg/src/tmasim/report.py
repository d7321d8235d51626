"""Report writers: delimited outputs, matplotlib figures, and the text summary.

Every experiment emits CSV files for its numeric artifacts, renders PNG
figures next to them, and appends measured-vs-target lines to a summary
report.  Output is deterministic for a fixed config and seed: no timestamps,
fixed float formatting, fixed figure style.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "write_csv",
    "save_figure",
    "Summary",
    "new_axes",
]

_FLOAT_FMT = "%.12g"


def write_csv(path: str, header: list[str], columns: list[np.ndarray]) -> None:
    """Write columns as comma-separated text with a one-line header."""
    arr = np.column_stack([np.asarray(c) for c in columns])
    np.savetxt(path, arr, delimiter=",", header=",".join(header), comments="", fmt=_FLOAT_FMT)


def new_axes(n_rows: int = 1, n_cols: int = 1, width: float = 7.0, height: float = 3.2):
    fig, axes = plt.subplots(n_rows, n_cols, figsize=(width, height * n_rows))
    return fig, axes


def save_figure(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


class Summary:
    """Accumulates report lines and writes the experiment summary file."""

    def __init__(self, experiment: str, config_lines: list[str]):
        self.lines: list[str] = [f"experiment: {experiment}", ""]
        self.lines += [f"  {line}" for line in config_lines]
        self.lines.append("")

    def add(self, text: str) -> None:
        self.lines.append(text)

    def measured(self, name: str, value: float, unit: str, target: float | None = None,
                 tol: float | None = None) -> None:
        shown = f"{value:.3f}" if abs(value) >= 5e-4 or value == 0.0 else f"{value:.3e}"
        line = f"{name}: {shown} {unit}"
        if target is not None:
            line += f"   (reference {target:g} {unit}"
            if tol is not None:
                status = "within" if abs(value - target) <= tol else "OUTSIDE"
                line += f" +/- {tol:g}: {status} tolerance"
            line += ")"
        self.lines.append(line)

    def write(self, out_dir: str, name: str = "summary.txt") -> str:
        path = os.path.join(out_dir, name)
        with open(path, "w") as fh:
            fh.write("\n".join(self.lines) + "\n")
        return path
