"""Render nvgyro CSV outputs into figures.

Four figure kinds, one per CSV contract:

  misalign     dephasing time vs tilt angle, log y-scale, the two theory
               curves (magnetic-only solid, with the relaxation channel
               dashed) plus simulated points
  ramsey       contrast decay vs evolution time with fit error bars
  gyro         set vs reconstructed rotation-rate series
  enhancement  gyromagnetic enhancement factors vs field, symlog y-scale

No physics is recomputed here: figures are drawn from the CSV columns
verbatim, and --dump-points echoes exactly the plotted values (the raw
column text) for diff-testing.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class Table:
    header: list[str]
    cells: list[list[str]]  # raw text, untouched

    def column(self, name: str) -> list[str]:
        try:
            idx = self.header.index(name)
        except ValueError:
            raise RenderError(f"missing column {name!r} (have {', '.join(self.header)})") from None
        return [row[idx] for row in self.cells]

    def floats(self, name: str) -> list[float]:
        return [float(v) for v in self.column(name)]


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    kind: str  # misalign | ramsey | gyro | enhancement
    out_path: str
    log_y: bool | None = None  # override the kind's default axis scale


#: plotted columns per kind, in dump order
KIND_COLUMNS = {
    "misalign": ["theta_deg", "t2n_sim_s", "t2n_pred_s", "t2n_pred_t1e_s"],
    "ramsey": ["t_s", "contrast", "contrast_err"],
    "gyro": ["time_s", "omega_set_dps", "omega_rec_dps"],
    "enhancement": ["B_gauss", "alpha_p1", "alpha_0", "alpha_m1"],
}


def load_table(path: str) -> Table:
    try:
        with open(path) as handle:
            lines = [line.rstrip("\n") for line in handle]
    except OSError as exc:
        raise RenderError(f"cannot read {path}: {exc}") from exc
    rows = [line for line in lines if line and not line.startswith("#")]
    if not rows:
        raise RenderError(f"{path} is empty")
    header = rows[0].split(",")
    cells = [row.split(",") for row in rows[1:]]
    if not cells:
        raise RenderError(f"{path} has a header but no data rows")
    for i, row in enumerate(cells, start=2):
        if len(row) != len(header):
            raise RenderError(f"{path}: row {i} has {len(row)} cells, expected {len(header)}")
    return Table(header, cells)


def dump_points(table: Table, kind: str) -> str:
    """The plotted columns, raw text, for diff-testing."""
    names = KIND_COLUMNS[kind]
    columns = [table.column(n) for n in names]
    lines = [",".join(names)]
    lines += [",".join(col[i] for col in columns) for i in range(len(columns[0]))]
    return "\n".join(lines) + "\n"


def _finite(xs: list[float], ys: list[float]) -> tuple[list[float], list[float]]:
    pairs = [(x, y) for x, y in zip(xs, ys) if y == y]  # drop NaN points
    if not pairs:
        return [], []
    return [p[0] for p in pairs], [p[1] for p in pairs]


def render(spec: FigureSpec) -> str:
    if spec.kind not in KIND_COLUMNS:
        raise RenderError(f"unknown figure kind {spec.kind!r} (have {', '.join(KIND_COLUMNS)})")
    table = load_table(spec.csv_path)
    for name in KIND_COLUMNS[spec.kind]:
        table.column(name)  # named diagnostic before any drawing

    fig, ax = plt.subplots(figsize=(5.2, 3.6), constrained_layout=True)
    if spec.kind == "misalign":
        theta = table.floats("theta_deg")
        ax.plot(theta, [v * 1e3 for v in table.floats("t2n_pred_s")], "-", color="gray",
                label="magnetic noise only")
        ax.plot(theta, [v * 1e3 for v in table.floats("t2n_pred_t1e_s")], "--", color="gray",
                label="with relaxation channel")
        x, y = _finite(theta, table.floats("t2n_sim_s"))
        ax.plot(x, [v * 1e3 for v in y], "o", color="tab:orange", label="simulated")
        ax.set_yscale("log" if spec.log_y in (None, True) else "linear")
        ax.set_xlabel("misalignment angle (deg)")
        ax.set_ylabel("T2n* (ms)")
        ax.legend()
    elif spec.kind == "ramsey":
        t_ms = [v * 1e3 for v in table.floats("t_s")]
        ax.errorbar(t_ms, table.floats("contrast"), yerr=table.floats("contrast_err"),
                    fmt="o-", capsize=2)
        if spec.log_y:
            ax.set_yscale("log")
        ax.set_xlabel("evolution time (ms)")
        ax.set_ylabel("contrast")
    elif spec.kind == "gyro":
        time_s = table.floats("time_s")
        ax.step(time_s, table.floats("omega_set_dps"), where="post", label="set")
        ax.plot(time_s, table.floats("omega_rec_dps"), "o", ms=3, label="reconstructed")
        ax.set_xlabel("time (s)")
        ax.set_ylabel("rotation rate (deg/s)")
        ax.legend()
    else:  # enhancement
        b = table.floats("B_gauss")
        for name, style in (("alpha_p1", "-"), ("alpha_0", "-"), ("alpha_m1", "-")):
            ax.plot(b, table.floats(name), style, label=name)
        ax.set_yscale("symlog", linthresh=1.0)
        ax.set_xlabel("B (G)")
        ax.set_ylabel("enhancement factor")
        ax.legend()
    fig.savefig(spec.out_path, dpi=150)
    plt.close(fig)
    return spec.out_path


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="nvgyro-plot", description=__doc__)
    parser.add_argument("--kind", required=True, choices=sorted(KIND_COLUMNS))
    parser.add_argument("--csv", required=True, help="input CSV (nvgyro column contracts)")
    parser.add_argument("--out", help="output image path (.png/.svg); required unless --dump-points")
    parser.add_argument("--dump-points", action="store_true",
                        help="echo the plotted values to stdout instead of rendering")
    parser.add_argument("--linear-y", action="store_true", help="linear y axis where log is the default")
    args = parser.parse_args(argv)
    try:
        if args.dump_points:
            sys.stdout.write(dump_points(load_table(args.csv), args.kind))
            return 0
        if not args.out:
            parser.error("--out is required unless --dump-points is given")
        render(FigureSpec(csv_path=args.csv, kind=args.kind, out_path=args.out,
                          log_y=False if args.linear_y else None))
        return 0
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
