"""Render the two free-energy figures from cayley-ising CSV files.

This package does no physics: it reads the frozen CSV schemas produced by
`cayley-ising fig1` / `cayley-ising fig2` and draws them. Curve roles map to
line styles as:

  fig1: the two accumulation-point curves solid, the zero-solution curve
        dashed, the translation-invariant curve dotted;
  fig2: the parametric (B, F) curve is split at the turning points of B into
        the lower branch (dashed), the middle branch (solid) and the upper
        branch (dotted), with vertical markers at the spinodal +-B_F.

Rendering is a pure function of the CSV contents; re-running produces the
identical layout.  A missing column fails loudly with the column name.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

FIG1_COLUMNS = ("beta", "F_alt_even", "F_alt_odd", "F_alt_zero", "F_ti_star")
FIG2_COLUMNS = ("h", "B", "F", "B_F")


class SchemaError(Exception):
    """CSV does not carry the expected columns or rows."""


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    figure_id: str  # "fig1" | "fig2"
    out_path: str
    x_range: tuple[float, float] | None = None
    y_range: tuple[float, float] | None = None


def load_columns(path: str, required: tuple[str, ...]) -> dict[str, list[float]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for name in required:
            if name not in header:
                raise SchemaError(f"missing column {name!r} in {path} (found {header})")
        data: dict[str, list[float]] = {name: [] for name in required}
        for row in reader:
            for name in required:
                data[name].append(float(row[name]))
    if not data[required[0]]:
        raise SchemaError(f"{path} has a header but no data rows")
    return data


def _segments_by_turning_points(xs: list[float]) -> list[tuple[int, int]]:
    """Index ranges [start, stop) between sign changes of the increments."""
    breaks = [0]
    for i in range(1, len(xs) - 1):
        if (xs[i] - xs[i - 1]) * (xs[i + 1] - xs[i]) < 0:
            breaks.append(i)
    breaks.append(len(xs) - 1)
    return [(a, b + 1) for a, b in zip(breaks, breaks[1:])]


def render(spec: FigureSpec) -> str:
    """Draw the requested figure, write it to spec.out_path, return the path."""
    if spec.figure_id == "fig1":
        data = load_columns(spec.csv_path, FIG1_COLUMNS)
        fig, ax = plt.subplots(figsize=(7.0, 5.0))
        beta = data["beta"]
        ax.plot(beta, data["F_alt_even"], "-", color="tab:blue", label="alternating, even depths")
        ax.plot(beta, data["F_alt_odd"], "-", color="tab:cyan", label="alternating, odd depths")
        ax.plot(beta, data["F_alt_zero"], "--", color="tab:gray", label="zero solution")
        ax.plot(beta, data["F_ti_star"], ":", color="tab:red", label="translation invariant")
        ax.set_xlabel(r"$\beta$")
        ax.set_ylabel("free energy per site")
    elif spec.figure_id == "fig2":
        data = load_columns(spec.csv_path, FIG2_COLUMNS)
        fig, ax = plt.subplots(figsize=(7.0, 5.0))
        bs, fs = data["B"], data["F"]
        styles = {0: ("--", "tab:gray", "lower branch"), 1: ("-", "tab:blue", "middle branch"),
                  2: (":", "tab:red", "upper branch")}
        for idx, (a, b) in enumerate(_segments_by_turning_points(bs)):
            style, color, label = styles.get(idx, ("-", "black", None))
            ax.plot(bs[a:b], fs[a:b], style, color=color, label=label)
        b_f = data["B_F"][0]
        for marker in (-b_f, b_f):
            ax.axvline(marker, color="black", linewidth=0.6, alpha=0.5)
        ax.set_xlabel("B")
        ax.set_ylabel("free energy per site")
    else:
        raise SchemaError(f"unknown figure id {spec.figure_id!r} (expected fig1 or fig2)")

    if spec.x_range is not None:
        ax.set_xlim(*spec.x_range)
    if spec.y_range is not None:
        ax.set_ylim(*spec.y_range)
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(spec.out_path, dpi=160)
    plt.close(fig)
    return spec.out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cayley-ising-figures",
        description="render fig1/fig2 plots from cayley-ising CSV output",
    )
    parser.add_argument("figure", choices=("fig1", "fig2"))
    parser.add_argument("--csv", required=True, help="input CSV produced by cayley-ising")
    parser.add_argument("--out", required=True, help="output image path (png/svg by extension)")
    parser.add_argument("--x-min", type=float, default=None)
    parser.add_argument("--x-max", type=float, default=None)
    parser.add_argument("--y-min", type=float, default=None)
    parser.add_argument("--y-max", type=float, default=None)
    args = parser.parse_args(argv)

    x_range = (args.x_min, args.x_max) if args.x_min is not None and args.x_max is not None else None
    y_range = (args.y_min, args.y_max) if args.y_min is not None and args.y_max is not None else None
    spec = FigureSpec(args.csv, args.figure, args.out, x_range, y_range)
    try:
        render(spec)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
