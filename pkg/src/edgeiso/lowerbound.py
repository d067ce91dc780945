"""Explicit minimizer family witnessing the n^(3/4) fluctuation lower bound.

For each side s >= 2 the base configuration is the s-cube [1,s]^3 with a
top face of d_s = s^2 - s*floor(sqrt(s)) - floor(s/4) cells (a rectangle
of r = s - floor(sqrt(s)) - 1 full rows plus one partial line), giving
n_s = s^3 + d_s points.  The top face is a 2D minimizer by the closed
rectangle-plus-line criterion, which makes the whole configuration a 3D
minimizer.

Two bond-preserving transformations then push material away from the
Wulff cube:

  1. ``move_edge_lines``: the (h+1)^2 full lines near the top-back edge
     (h = floor(n_s^(1/12) / 3)) are removed one at a time; before each
     removal the whole top layer slides one step in +x and the removed
     line is reinserted at the front of the top layer.  Valid whenever
     h + (h+1)^2 < floor(sqrt(s)) (the slid face must clear the carved
     corner), which holds for every s >= 4 up to any tested horizon.
  2. ``fold_top_slab``: everything at height z >= s-h (including the top
     layer) is mapped rigidly by (x, y, z) -> (s-h-z, y, x), reattaching
     it as extra columns against the x = 1 face.

The folded configuration contains the full block
[-h, s] x [1, s] x [1, s-h-1], so every placement of the Wulff cube
misses at least s*(s-h-1)*(h+1) of its points; that product exceeds
0.3 * n_s^(3/4) from s = 20 on.  Every step is bond-checked numerically;
a change aborts, certifying the construction's precondition failed.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .intmath import icbrt, third_of_root12
from .lattice import Config3, bond_count
from .planar import sharp_d, sharp_sequence_2d
from .wulff import FluctuationReport, fluctuation2, fluctuation3

__all__ = [
    "ConstructionError",
    "sharp_n",
    "carve_height",
    "shift_has_clearance",
    "min_supported_s",
    "build_block_with_face",
    "move_edge_lines",
    "fold_top_slab",
    "LowerBoundInstance",
    "build_instance",
    "bound_value",
    "measured_ratio",
    "sharp_bound_2d",
    "sharp_ratio_2d",
]


class ConstructionError(ValueError):
    """A transformation changed the bond count (s below the supported range)."""


def sharp_n(s: int) -> int:
    """n_s = s^3 + d_s, the 3D sharpness sequence."""
    return s ** 3 + sharp_d(s)


def carve_height(s: int) -> int:
    """h = floor(n_s^(1/12) / 3), the carve depth for side s."""
    return third_of_root12(sharp_n(s))


def shift_has_clearance(s: int) -> bool:
    """Whether h + (h+1)^2 < floor(sqrt(s)): the slid top face stays clear
    of the carved corner, so transformation 1 preserves bonds."""
    if s < 2:
        raise ValueError("s must be >= 2")
    h = carve_height(s)
    return h + (h + 1) ** 2 < isqrt(s)


_S0_CACHE: dict[int, int] = {}


def min_supported_s(horizon: int = 10 ** 6) -> int:
    """Smallest s such that the clearance condition holds for s and every
    larger s up to the horizon (beyond which it is checked heuristically:
    the carve depth grows like s^(1/4) against floor(sqrt(s)))."""
    if horizon in _S0_CACHE:
        return _S0_CACHE[horizon]
    last_fail = 1
    h = 0
    threshold = 3 ** 12  # n at which h would become 1
    for s in range(2, horizon + 1):
        n = sharp_n(s)
        while n >= threshold:
            h += 1
            threshold = (3 * (h + 1)) ** 12
        if h + (h + 1) ** 2 >= isqrt(s):
            last_fail = s
    s0 = last_fail + 1
    _S0_CACHE[horizon] = s0
    return s0


def _face_grid(s: int) -> np.ndarray:
    """Top-face occupancy (s x s plane): r full rows plus one partial line."""
    r = s - isqrt(s) - 1
    q = s // 4
    face = np.zeros((s, s), dtype=bool)
    face[:r, :] = True
    face[r, : s - q] = True
    return face


def build_block_with_face(s: int) -> Config3:
    """The s-cube on [1,s]^3 with the d_s-cell minimizing face on top."""
    if s < 2:
        raise ValueError("s must be >= 2")
    grid = np.zeros((s, s, s + 1), dtype=bool)
    grid[:, :, :s] = True
    grid[:, :, s] = _face_grid(s)
    return Config3.from_grid(grid, (1, 1, 1))


def _grid_bonds3(grid: np.ndarray) -> int:
    total = 0
    for ax in range(3):
        a = [slice(None)] * 3
        b = [slice(None)] * 3
        a[ax] = slice(0, -1)
        b[ax] = slice(1, None)
        total += int((grid[tuple(a)] & grid[tuple(b)]).sum())
    return total


def move_edge_lines(m: Config3, s: int) -> Config3:
    """Transformation 1: carve the (h+1)^2 top-back edge lines and extend
    the top layer, one slide-and-reinsert per line, bond-checked each time.

    Lines (full in y) at x in [s-h, s], z in [s-h, s] are processed in
    decreasing x then decreasing z; each iteration slides the entire top
    layer by +x before reinserting the line at the front of that layer.
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    box = m.bbox
    if box is None or box.lo != (1, 1, 1) or box.hi != (s, s, s + 1):
        raise ValueError("input is not the block-with-face configuration")
    h = carve_height(s)
    grid = np.array(m.grid()[0])  # writable copy, origin (1,1,1)
    bonds = _grid_bonds3(grid)
    for x0 in range(s, s - h - 1, -1):
        for z0 in range(s, s - h - 1, -1):
            top = grid[:, :, s]
            if top[-1].any():
                raise ConstructionError("construction invalid for this s: top layer overflow")
            grid[1:, :, s] = top[:-1]
            grid[0, :, s] = False
            grid[x0 - 1, :, z0 - 1] = False
            grid[0, :, s] = True
            new_bonds = _grid_bonds3(grid)
            if new_bonds != bonds:
                raise ConstructionError("construction invalid for this s: bond count changed")
    return Config3.from_grid(grid, (1, 1, 1))


def fold_top_slab(m1: Config3, s: int) -> Config3:
    """Transformation 2: rigidly map the slab z >= s-h (top layer included)
    by (x, y, z) -> (s-h-z, y, x), reattaching it against the x = 1 face."""
    if s < 2:
        raise ValueError("s must be >= 2")
    h = carve_height(s)
    grid, origin = m1.grid()
    if origin != (1, 1, 1):
        raise ValueError("input must be anchored at (1,1,1)")
    bonds = _grid_bonds3(grid)
    z_cut = s - h  # slab occupies coordinates z in [s-h, s+1]
    # output x range [-h-1, s], z range [1, s-h-1]
    out = np.zeros((s + h + 2, s, z_cut - 1), dtype=bool)
    out[h + 2 :, :, :] = grid[:, :, : z_cut - 1]
    for z0 in range(z_cut, s + 2):
        plane = grid[:, :, z0 - 1]  # x-y occupancy at height z0
        xi = (s - h - z0) + h + 1  # target x index for coordinate s-h-z0
        # the plane's x coordinate becomes the output z coordinate
        out[xi, :, :] = plane[: z_cut - 1, :].T
        if plane[z_cut - 1 :, :].any():
            raise ConstructionError("slab extends past the fold target range")
    folded = Config3.from_grid(out, (-h - 1, 1, 1))
    if bond_count(folded) != bonds or folded.n != m1.n:
        raise ConstructionError("construction invalid for this s: bond count changed")
    block = out[1:, :, :]  # x in [-h, s], full block expected
    if not block.all():
        raise ConstructionError("folded configuration misses the guaranteed block")
    return folded


@dataclass(frozen=True)
class LowerBoundInstance:
    s: int
    q: int
    r: int
    d: int
    n: int
    h1: int
    clearance_ok: bool
    base: Config3
    shifted: Config3
    folded: Config3

    @property
    def bound_value(self) -> int:
        return self.s * (self.s - self.h1 - 1) * (self.h1 + 1)


def build_instance(s: int) -> LowerBoundInstance:
    """Construct the full chain base -> shifted -> folded for one s."""
    if s < 2:
        raise ValueError("s must be >= 2")
    if not shift_has_clearance(s):
        raise ConstructionError(f"s={s} lacks clearance; first supported s is {min_supported_s()}")
    base = build_block_with_face(s)
    shifted = move_edge_lines(base, s)
    folded = fold_top_slab(shifted, s)
    return LowerBoundInstance(
        s=s,
        q=s // 4,
        r=s - isqrt(s) - 1,
        d=sharp_d(s),
        n=sharp_n(s),
        h1=carve_height(s),
        clearance_ok=True,
        base=base,
        shifted=shifted,
        folded=folded,
    )


def bound_value(s: int) -> int:
    """s * (s - h - 1) * (h + 1): guaranteed points of the folded minimizer
    outside any placement of the Wulff cube."""
    h = carve_height(s)
    return s * (s - h - 1) * (h + 1)


def measured_ratio(s: int) -> tuple[FluctuationReport, float]:
    """Fluctuation of the folded configuration and its ratio to n^(3/4)."""
    inst = build_instance(s)
    report = fluctuation3(inst.folded)
    return report, report.ratio


def sharp_bound_2d(s: int) -> int:
    """Twice the guaranteed 2D symmetric difference: floor(sqrt(s)) * (s - floor(sqrt(s)) - 1).

    Kept doubled so the bound stays integral; tests assert
    2 * sym_diff >= this value.
    """
    p = isqrt(s)
    return p * (s - p - 1)


def sharp_ratio_2d(s: int) -> tuple[FluctuationReport, float]:
    """Fluctuation of the 2D sharpness configuration against its Wulff square."""
    if s < 2:
        raise ValueError("s must be >= 2")
    d, cfg = sharp_sequence_2d(s)
    report = fluctuation2(cfg)
    return report, report.ratio
