"""Wulff reference shapes and the fluctuation metric.

The 3D Wulff shape for n points is the lattice cube [0, L]^3 with
L = floor(n^(1/3)); the 2D reference is the floor(sqrt(d))-square
[1, floor(sqrt(d))]^2.  The fluctuation of a configuration m is the
exact minimum over integer translations a of #(m XOR (a + W)).

Since W is a full box, the overlap with a + W is a box-filtered count of
m's occupancy grid, computed with prefix sums.  Translations are scanned
over a ranging componentwise across [bbox.lo - (w-1), bbox.hi], where w
is the window side: any window outside that range misses m entirely and
has symmetric difference n + #W, which can never beat a placement with
nonzero overlap, so the scanned minimum is the global one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .intmath import icbrt, isqrt
from .lattice import Config2, Config3, EmptyConfigError, minimal_cuboid, _Config

__all__ = [
    "wulff2",
    "wulff3",
    "wulff_side",
    "FluctuationReport",
    "fluctuation2",
    "fluctuation3",
    "fluctuation",
    "side_deviation",
    "max_box_overlap",
]


def wulff_side(n: int, dim: int) -> int:
    """floor(n^(1/dim)), the Wulff side parameter, exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return isqrt(n) if dim == 2 else icbrt(n)


def wulff3(n: int) -> Config3:
    """The cube [0, L]^3 with L = floor(n^(1/3)); (L+1)^3 points."""
    ell = wulff_side(n, 3)
    return Config3.from_box((0, 0, 0), (ell, ell, ell))


def wulff2(d: int) -> Config2:
    """The square [1, r]^2 with r = floor(sqrt(d)); r^2 points."""
    r = wulff_side(d, 2)
    return Config2.from_box((1, 1), (r, r))


@dataclass(frozen=True)
class FluctuationReport:
    n: int
    best_shift: tuple[int, ...]
    sym_diff: int
    ratio: float  # sym_diff / n**(3/4), rounded half-even to 6 places
    baseline_gap: int  # |n - #W|, a floor below which sym_diff cannot go
    wulff_points: int

    def as_dict(self) -> dict:
        d = {"n": self.n}
        for ax, v in zip("xyz", self.best_shift):
            d[f"a{ax}"] = v
        d["sym_diff"] = self.sym_diff
        d["ratio"] = self.ratio
        d["baseline_gap"] = self.baseline_gap
        return d


def max_box_overlap(c: _Config, side: int) -> tuple[int, tuple[int, ...]]:
    """Maximum #(c AND box) over all side^dim windows, with the
    lexicographically smallest window low-corner attaining it.

    Prefix sums over the occupancy grid; the outer axis is scanned in a
    Python loop (ascending, so the first maximum is the lex-smallest) and
    the inner axes are resolved with vectorized corner gathers.
    """
    if c.is_empty:
        raise EmptyConfigError("empty")
    grid, origin = c.grid()
    dim = c.dim
    pre = np.zeros(tuple(s + 1 for s in grid.shape), dtype=np.int32)
    inner = tuple(slice(1, None) for _ in range(dim))
    acc = grid.astype(np.int32)
    for ax in range(dim):
        acc = acc.cumsum(axis=ax, dtype=np.int32)
    pre[inner] = acc

    shape = grid.shape
    # window low-corner offsets t relative to the grid origin
    ranges = [np.arange(-(side - 1), shape[ax]) for ax in range(dim)]
    clipped_lo = [np.clip(r, 0, shape[ax]) for ax, r in enumerate(ranges)]
    clipped_hi = [np.clip(r + side, 0, shape[ax]) for ax, r in enumerate(ranges)]

    best = -1
    best_t: tuple[int, ...] = ()
    if dim == 2:
        # clipped prefix lookups saturate at the array edges, so an
        # edge-replicated pad turns every gather into a contiguous slice;
        # the low pads stay zero because prefix row/column 0 are zero
        w = side - 1
        b1, b2 = pre.shape
        padded = np.zeros((b1 + 2 * w, b2 + 2 * w), dtype=np.int32)
        padded[w : w + b1, w : w + b2] = pre
        if w:
            padded[w + b1 :, w:] = padded[w + b1 - 1, w:]
            padded[:, w + b2 :] = padded[:, w + b2 - 1][:, None]
        vals = padded[side:, side:] - padded[:-side, side:]
        vals -= padded[side:, :-side]
        vals += padded[:-side, :-side]
        flat = int(vals.argmax())  # first maximum in C order = lex smallest
        i, j = divmod(flat, vals.shape[1])
        best = int(vals[i, j])
        best_t = (int(ranges[0][i]), int(ranges[1][j]))
    else:
        lo1, hi1 = clipped_lo[1], clipped_hi[1]
        lo2, hi2 = clipped_lo[2], clipped_hi[2]
        for i, t0 in enumerate(ranges[0]):
            plane = pre[clipped_hi[0][i]] - pre[clipped_lo[0][i]]
            vals = (
                plane[np.ix_(hi1, hi2)]
                - plane[np.ix_(lo1, hi2)]
                - plane[np.ix_(hi1, lo2)]
                + plane[np.ix_(lo1, lo2)]
            )
            m = int(vals.max())
            if m > best:
                best = m
                flat = int(vals.argmax())
                j, k = divmod(flat, vals.shape[1])
                best_t = (int(t0), int(ranges[1][j]), int(ranges[2][k]))
    corner = tuple(o + t for o, t in zip(origin, best_t))
    return best, corner


def _fluctuation(m: _Config, w: _Config, exponent_base: int) -> FluctuationReport:
    if m.is_empty:
        raise EmptyConfigError("empty")
    side = w.bbox.side_lengths[0] + 1
    overlap, corner = max_box_overlap(m, side)
    w_lo = w.bbox.lo
    shift = tuple(c - l for c, l in zip(corner, w_lo))
    sym = m.n + w.n - 2 * overlap
    ratio = round(sym / exponent_base ** 0.75, 6)
    return FluctuationReport(
        n=m.n,
        best_shift=shift,
        sym_diff=sym,
        ratio=ratio,
        baseline_gap=abs(m.n - w.n),
        wulff_points=w.n,
    )


def fluctuation3(m: Config3) -> FluctuationReport:
    """min over integer a of #(m XOR (a + W_n)) with n = #m, exactly."""
    if m.is_empty:
        raise EmptyConfigError("empty")
    return _fluctuation(m, wulff3(m.n), m.n)


def fluctuation2(m: Config2) -> FluctuationReport:
    """2D analogue against the floor(sqrt(d))-square."""
    if m.is_empty:
        raise EmptyConfigError("empty")
    return _fluctuation(m, wulff2(m.n), m.n)


def fluctuation(m: _Config) -> FluctuationReport:
    return fluctuation2(m) if m.dim == 2 else fluctuation3(m)


def side_deviation(m: Config3) -> int:
    """max_i |ell_i - ell_n|: bounding-box side lengths vs the Wulff side."""
    box = minimal_cuboid(m)
    ell = wulff_side(m.n, 3)
    return max(abs(s - ell) for s in box.side_lengths)
