"""Exact 2D edge-isoperimetric theory on the square lattice.

Closed forms: a d-point subset of Z^2 has edge perimeter at least
2*ceil(2*sqrt(d)), equivalently at most floor(2d - 2*sqrt(d)) unit
bonds, and a set is a minimizer exactly when it attains these.

The canonical minimizers built here are *daisies*: a near-square
rectangle R(s, s') = [1,s] x [1,s'] with s' in {s, s+1}, plus a partial
extra line of e < s' cells (on top when s' == s, on the right when
s' == s+1).  Daisies are nested, D_1 c D_2 c ..., so they come with a
canonical growth chain: ``daisy_cell(k)`` is the unique cell added when
the daisy grows from k-1 to k points.  The chain is what makes the 3D
rearrangement algorithms deterministic and their bond bookkeeping exact.

Also implemented: the rectangle-plus-line family RL(s, p, q) (a
rectangle of width s-p-1 and height s plus one column of height s-q),
whose minimality is decided by the closed inequality
4(s-q) > (p+1)^2, and the sharpness sequence d_s built from it.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .intmath import ceil_2sqrt
from .lattice import Config2, bond_count, edge_perimeter

__all__ = [
    "min_perimeter2",
    "max_bonds2",
    "is_minimizer2",
    "DaisyDescriptor",
    "daisy_dims",
    "daisy_cell",
    "build_daisy",
    "RectLineDescriptor",
    "build_rect_line",
    "rect_line_bonds",
    "rect_line_is_minimizer",
    "sharp_d",
    "sharp_sequence_2d",
]


def min_perimeter2(d: int) -> int:
    """Minimum edge perimeter over all d-point subsets of Z^2: 2*ceil(2*sqrt(d))."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return 2 * ceil_2sqrt(d)


def max_bonds2(d: int) -> int:
    """Maximum number of unit bonds of a d-point subset: floor(2d - 2*sqrt(d)).

    Exact for arbitrary d since floor(2d - 2*sqrt(d)) == 2d - ceil(2*sqrt(d)).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    return 2 * d - ceil_2sqrt(d)


def is_minimizer2(c: Config2) -> bool:
    """True iff c attains the 2D minimum perimeter for its cardinality."""
    if c.is_empty:
        raise ValueError("empty configuration")
    return bond_count(c) == max_bonds2(c.n)


@dataclass(frozen=True)
class DaisyDescriptor:
    """Parameters (width, height, extra) of the daisy with width*height+extra cells."""

    width: int
    height: int
    extra: int

    def __post_init__(self):
        if self.width < 1 or self.height not in (self.width, self.width + 1):
            raise ValueError("height must be width or width+1")
        if not 0 <= self.extra < self.height:
            raise ValueError("extra line must be shorter than the height")

    @property
    def d(self) -> int:
        return self.width * self.height + self.extra


def daisy_dims(d: int) -> tuple[int, int, int]:
    """The unique (width, height, extra) with width*height+extra == d,
    height in {width, width+1}, extra < height."""
    if d < 1:
        raise ValueError("d must be >= 1")
    s = isqrt(d)
    rem = d - s * s
    if rem == 0:
        return s, s, 0
    if rem < s:
        return s, s, rem
    if rem == s:
        return s, s + 1, 0
    return s, s + 1, rem - s


def daisy_cell(k: int) -> tuple[int, int]:
    """Cell added when the canonical daisy grows from k-1 to k points.

    The daisies are nested, so cells 1..d enumerate the daisy of size d in
    a fixed growth order (rectangle rows/columns completed one line at a
    time, the partial line last).
    """
    w, h, e = daisy_dims(k)
    if e == 0:
        return w, h
    if h == w:  # extra line on top
        return e, h + 1
    return w + 1, e  # extra line on the right


def _daisy_grid(d: int) -> np.ndarray:
    w, h, e = daisy_dims(d)
    grid = np.zeros((w + 1, h + 1), dtype=bool)
    grid[:w, :h] = True
    if e:
        if h == w:
            grid[:e, h] = True
        else:
            grid[w, :e] = True
    return grid


def build_daisy(d: int) -> tuple[DaisyDescriptor, Config2]:
    """The canonical d-point minimizer, anchored at (1, 1)."""
    w, h, e = daisy_dims(d)
    cfg = Config2.from_grid(_daisy_grid(d), (1, 1))
    return DaisyDescriptor(w, h, e), cfg


@dataclass(frozen=True)
class RectLineDescriptor:
    """Parameters of RL(s, p, q): rectangle (s-p-1) x s plus a column of s-q cells.

    Valid for 0 <= p <= s-2 and 0 <= q <= s-1; at p == s-1 the rectangle
    is empty and the closed bond formula breaks down, so that case is
    rejected as degenerate.
    """

    s: int
    p: int
    q: int

    def __post_init__(self):
        if self.s < 1 or self.p < 0 or self.q < 0:
            raise ValueError("degenerate parameters")
        if self.p > self.s - 2 or self.q >= self.s:
            raise ValueError("degenerate parameters")

    @property
    def n(self) -> int:
        return self.s * self.s - self.s * self.p - self.q


def _rect_line_grid(s: int, p: int, q: int) -> np.ndarray:
    # width s-p-1 rectangle of height s, plus the column x = s-p of height s-q
    grid = np.zeros((s - p, s), dtype=bool)
    grid[: s - p - 1, :] = True
    grid[s - p - 1, : s - q] = True
    return grid


def build_rect_line(s: int, p: int, q: int) -> Config2:
    """Realize RL(s, p, q) anchored at (1, 1); exactly s^2 - s*p - q points."""
    RectLineDescriptor(s, p, q)
    return Config2.from_grid(_rect_line_grid(s, p, q), (1, 1))


def rect_line_bonds(s: int, p: int, q: int) -> int:
    """Closed bond count of RL(s, p, q): (s-1)(s-p-1) + s(s-p-2) + 2(s-q) - 1."""
    RectLineDescriptor(s, p, q)
    return (s - 1) * (s - p - 1) + s * (s - p - 2) + 2 * (s - q) - 1


def rect_line_is_minimizer(s: int, p: int, q: int) -> bool:
    """Whether RL(s, p, q) is a 2D minimizer: exactly when 4(s-q) > (p+1)^2."""
    RectLineDescriptor(s, p, q)
    return 4 * (s - q) > (p + 1) ** 2


def sharp_d(s: int) -> int:
    """d_s = s^2 - s*floor(sqrt(s)) - floor(s/4), the 2D sharpness sizes."""
    if s < 2:
        raise ValueError("s must be >= 2")
    return s * s - s * isqrt(s) - s // 4


def sharp_sequence_2d(s: int) -> tuple[int, Config2]:
    """(d_s, RL(s, floor(sqrt(s)), floor(s/4))) - a guaranteed minimizer.

    At s == 2 the rectangle part is empty (p == s-1) and the configuration
    degenerates to the single column, built directly.
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    p, q = isqrt(s), s // 4
    d = sharp_d(s)
    if p == s - 1:  # only s == 2: bare column {s-p} x [1, s-q]
        grid = np.ones((1, s - q), dtype=bool)
        cfg = Config2.from_grid(grid, (s - p, 1))
    else:
        cfg = build_rect_line(s, p, q)
    assert cfg.n == d
    return d, cfg
