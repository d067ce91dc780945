"""Sweep reports: delimited output, exponent fits, and rendered figures.

CSV conventions: comma separator, header row, LF line endings, '.' decimal
point, ratios rounded half-even to six places.  Rows are emitted in
parameter order so repeated runs diff clean.  The report path also renders
a matplotlib figure next to each CSV (PNG, Agg backend); the CSV remains
the machine-readable contract.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .intmath import icbrt
from .lattice import bond_count
from . import lowerbound as lb
from .planar import sharp_sequence_2d
from .wulff import fluctuation2, fluctuation3, side_deviation

SCAN2D_FIELDS = ["s", "d", "sym_diff", "baseline_gap", "lower_bound_2x", "ratio"]
SCAN3D_FIELDS = [
    "s", "n", "d", "h1", "bound_value", "sym_diff", "baseline_gap",
    "ratio_bound", "ratio_measured", "bonds_conserved",
]


def scan2d_rows(s_values) -> list[dict]:
    rows = []
    for s in s_values:
        d, cfg = sharp_sequence_2d(s)
        rep = fluctuation2(cfg)
        rows.append({
            "s": s,
            "d": d,
            "sym_diff": rep.sym_diff,
            "baseline_gap": rep.baseline_gap,
            "lower_bound_2x": lb.sharp_bound_2d(s),
            "ratio": f"{rep.ratio:.6f}",
        })
    return rows


def scan3d_rows(s_values) -> list[dict]:
    rows = []
    for s in s_values:
        if not lb.shift_has_clearance(s):
            continue
        inst = lb.build_instance(s)
        rep = fluctuation3(inst.folded)
        conserved = int(
            bond_count(inst.base) == bond_count(inst.shifted) == bond_count(inst.folded)
        )
        n34 = inst.n ** 0.75
        rows.append({
            "s": s,
            "n": inst.n,
            "d": inst.d,
            "h1": inst.h1,
            "bound_value": inst.bound_value,
            "sym_diff": rep.sym_diff,
            "baseline_gap": rep.baseline_gap,
            "ratio_bound": f"{round(inst.bound_value / n34, 6):.6f}",
            "ratio_measured": f"{rep.ratio:.6f}",
            "bonds_conserved": conserved,
        })
    return rows


def fit_exponent(sizes, values) -> float:
    """Least-squares slope of log(values) against log(sizes)."""
    xs = np.log(np.asarray(sizes, dtype=float))
    ys = np.log(np.asarray(values, dtype=float))
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def write_csv(path, fieldnames, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def figure_path(csv_path) -> Path:
    return Path(csv_path).with_suffix(".png")


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_scan2d_figure(rows, slope: float, path) -> None:
    """Log-log symmetric difference against size with the fitted power law."""
    plt = _pyplot()
    d = np.array([float(r["d"]) for r in rows])
    sym = np.array([float(r["sym_diff"]) for r in rows])
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    ax.loglog(d, sym, ".", ms=3, color="tab:blue", label="measured")
    anchor = sym[-1] / d[-1] ** slope
    ax.loglog(d, anchor * d ** slope, "-", color="tab:orange",
              label=f"fit: slope {slope:.4f}")
    ax.loglog(d, 0.5 * d ** 0.75, "--", color="gray", label="d^(3/4)/2 reference")
    ax.set_xlabel("configuration size d")
    ax.set_ylabel("min symmetric difference to the Wulff square")
    ax.set_title("2D sharpness sweep")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_scan3d_figure(rows, path) -> None:
    """Bound and measured fluctuation ratios against n with the 1/3 line."""
    plt = _pyplot()
    n = np.array([float(r["n"]) for r in rows])
    rb = np.array([float(r["ratio_bound"]) for r in rows])
    rm = np.array([float(r["ratio_measured"]) for r in rows])
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    ax.semilogx(n, rm, ".", ms=3, color="tab:blue", label="measured / n^(3/4)")
    ax.semilogx(n, rb, ".", ms=3, color="tab:orange", label="bound / n^(3/4)")
    ax.axhline(1 / 3, color="gray", ls="--", label="1/3")
    ax.set_xlabel("n")
    ax.set_ylabel("fluctuation ratio")
    ax.set_title("3D lower-bound sweep")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def instance_report(s: int) -> dict:
    """Single construct-lower summary for one side length."""
    inst = lb.build_instance(s)
    rep = fluctuation3(inst.folded)
    n34 = inst.n ** 0.75
    return {
        "s": inst.s,
        "n": inst.n,
        "d": inst.d,
        "r": inst.r,
        "q": inst.q,
        "h1": inst.h1,
        "clearance_ok": inst.clearance_ok,
        "wulff_side": icbrt(inst.n),
        "bonds": bond_count(inst.base),
        "bonds_conserved": bond_count(inst.base)
        == bond_count(inst.shifted)
        == bond_count(inst.folded),
        "bound_value": inst.bound_value,
        "sym_diff": rep.sym_diff,
        "baseline_gap": rep.baseline_gap,
        "best_shift": list(rep.best_shift),
        "ratio_bound": round(inst.bound_value / n34, 6),
        "ratio_measured": rep.ratio,
        "side_deviation": side_deviation(inst.folded),
    }
