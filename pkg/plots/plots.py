#!/usr/bin/env python3
"""Render figure panels from simulator CSV output.

Reads only the documented CSV contract (columns t, L, Ldot, N, E_raw,
E_over_N, F, x_avg, pop_0..pop_{N-1}) and renders:

    fig1a   one average-energy curve per input CSV (parameter sweep overlay)
    fig2a   one average-force curve per input CSV
    fig5a   mode population pop_1 against the wall position L(t), twin axes
    custom  any --y-column, one curve per CSV

Inputs on different time grids are aligned to the first CSV's grid by
nearest sample.  Rendering is deterministic: same inputs, same bytes.

Usage:
    plots.py --panel fig1a --in out/sweep-b-*.csv --out fig1a.png
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class PanelError(ValueError):
    """Bad panel inputs: missing column, empty CSV, unknown panel."""


@dataclass
class Table:
    path: Path
    columns: dict[str, np.ndarray]

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise PanelError(
                f"{self.path}: no column {name!r} (have {', '.join(self.columns)})"
            )
        return self.columns[name]

    @property
    def label(self) -> str:
        return self.path.stem


@dataclass
class PanelSpec:
    inputs: list[Path]
    y_column: str
    out_path: Path
    x_label: str = "t"
    y_label: str = ""
    labels: list[str] = field(default_factory=list)
    overlay_wall: bool = False  # fig5a: wall position on a twin axis


def read_table(path: Path) -> Table:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise PanelError(f"{path}: empty CSV") from None
        rows = [list(map(float, row)) for row in reader if row]
    if not rows:
        raise PanelError(f"{path}: no data rows")
    data = np.asarray(rows)
    return Table(path=path, columns={name: data[:, i] for i, name in enumerate(header)})


def resample_nearest(t_base: np.ndarray, t: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Pick, for each base time, the sample with the nearest time stamp."""
    idx = np.searchsorted(t, t_base)
    idx = np.clip(idx, 1, len(t) - 1)
    left = t_base - t[idx - 1]
    right = t[idx] - t_base
    idx = idx - (left < right)
    return y[idx]


def render_panel(spec: PanelSpec) -> Path:
    tables = [read_table(p) for p in spec.inputs]
    if not tables:
        raise PanelError("no input CSVs")
    labels = spec.labels or [t.label for t in tables]
    if len(labels) != len(tables):
        raise PanelError(f"{len(labels)} labels for {len(tables)} inputs")

    base_t = tables[0].column("t")
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for table, label in zip(tables, labels):
        y = table.column(spec.y_column)
        t = table.column("t")
        if len(t) != len(base_t) or not np.array_equal(t, base_t):
            y = resample_nearest(base_t, t, y)
        ax.plot(base_t, y, label=label, linewidth=1.0)
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label or spec.y_column)
    ax.legend(loc="best", fontsize=8)

    if spec.overlay_wall:
        twin = ax.twinx()
        wall = tables[0].column("L")
        twin.plot(base_t, wall, color="gray", linestyle="--", linewidth=1.0, label="L(t)")
        twin.set_ylabel("L(t)")

    fig.tight_layout()
    spec.out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.out_path, dpi=150, metadata={"Software": None})
    plt.close(fig)
    return spec.out_path


PANELS = {
    "fig1a": {"y_column": "E_raw", "y_label": "average energy"},
    "fig2a": {"y_column": "F", "y_label": "average force"},
    "fig5a": {"y_column": "pop_1", "y_label": "|C_1|^2", "overlay_wall": True},
}


def build_spec(args: argparse.Namespace) -> PanelSpec:
    inputs = [Path(p) for p in args.inputs]
    if args.panel == "custom":
        if not args.y_column:
            raise PanelError("--panel custom needs --y-column")
        preset = {"y_column": args.y_column}
    elif args.panel in PANELS:
        preset = dict(PANELS[args.panel])
    else:
        raise PanelError(f"unknown panel {args.panel!r} (have {', '.join(PANELS)}, custom)")
    if args.panel == "fig5a":
        inputs = inputs[:1]  # single-run comparison panel
    labels = args.labels.split(",") if args.labels else []
    return PanelSpec(
        inputs=inputs,
        out_path=Path(args.out),
        labels=labels,
        **preset,
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="plots.py", description=__doc__)
    parser.add_argument("--panel", required=True, help="fig1a, fig2a, fig5a or custom")
    parser.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="CSV")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--y-column", default=None, help="column for --panel custom")
    parser.add_argument("--labels", default=None, help="comma-separated legend labels")
    args = parser.parse_args(argv)
    try:
        path = render_panel(build_spec(args))
    except PanelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
