"""Lattice configurations on Z^2 and Z^3.

A configuration is a finite set of integer lattice points.  Internally
each configuration stores a dense boolean occupancy grid over its tight
bounding box plus the box origin; point-set views are materialized on
demand.  The dense layout keeps the hot kernels (bond counting, boundary
counting, vacancy scans, window overlaps) O(volume) with vectorized
numpy, which is what makes desk-scale sweeps over millions of points
feasible.

Configurations are immutable value types: every operation returns a new
value, and translation shares the underlying grid.  Connectivity is
nearest-neighbor (4 neighbors in 2D, 6 in 3D), matching the unit-bond
definition used throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from scipy import ndimage

Point2 = tuple[int, int]
Point3 = tuple[int, int, int]

__all__ = [
    "Point2",
    "Point3",
    "Box",
    "Box3",
    "Config2",
    "Config3",
    "ParseError",
    "EmptyConfigError",
    "NotPlanarError",
    "bond_count",
    "edge_perimeter",
    "level",
    "minimal_cuboid",
    "minimal_rectangle",
    "three_vacancies",
    "sym_diff_size",
    "translate",
    "is_connected",
    "signed_axis_maps",
    "apply_axis_map",
    "parse_config",
    "load_config",
    "dump_config",
    "save_config",
]


class ParseError(ValueError):
    """Malformed configuration file."""


class EmptyConfigError(ValueError):
    """Operation undefined on the empty configuration."""


class NotPlanarError(ValueError):
    """Input points do not share a coordinate plane."""


@dataclass(frozen=True)
class Box:
    """Inclusive axis-aligned integer box with lo <= hi componentwise."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("corner dimensions differ")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError("box corners out of order")

    @property
    def side_lengths(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.lo, self.hi))

    @property
    def point_count(self) -> int:
        n = 1
        for a, b in zip(self.lo, self.hi):
            n *= b - a + 1
        return n

    def contains(self, p: tuple[int, ...]) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, p, self.hi))


class _Config:
    """Shared implementation for Config2 / Config3."""

    dim: int = 0
    __slots__ = ("_grid", "_origin", "_n")

    def __init__(self, points: Iterable[tuple[int, ...]] = ()):
        pts = np.array(sorted(set(map(tuple, points))), dtype=np.int64)
        if pts.size == 0:
            self._init_from_grid(np.zeros((0,) * self.dim, dtype=bool), (0,) * self.dim)
            return
        if pts.shape[1] != self.dim:
            raise ValueError(f"expected {self.dim} coordinates per point")
        lo = pts.min(axis=0)
        shape = tuple((pts.max(axis=0) - lo + 1).tolist())
        grid = np.zeros(shape, dtype=bool)
        grid[tuple((pts - lo).T)] = True
        self._init_from_grid(grid, tuple(int(v) for v in lo))

    def _init_from_grid(self, grid: np.ndarray, origin: tuple[int, ...]):
        grid.flags.writeable = False
        object.__setattr__(self, "_grid", grid)
        object.__setattr__(self, "_origin", origin)
        object.__setattr__(self, "_n", int(grid.sum()))

    def __setattr__(self, name, value):
        raise AttributeError("configurations are immutable")

    @classmethod
    def from_grid(cls, grid: np.ndarray, origin: tuple[int, ...]):
        """Build from a boolean occupancy array; trims to the tight box."""
        obj = cls.__new__(cls)
        grid = np.asarray(grid, dtype=bool)
        if grid.ndim != cls.dim:
            raise ValueError(f"grid must be {cls.dim}-dimensional")
        if not grid.any():
            obj._init_from_grid(np.zeros((0,) * cls.dim, dtype=bool), (0,) * cls.dim)
            return obj
        slices = []
        shift = []
        for ax in range(cls.dim):
            other = tuple(i for i in range(cls.dim) if i != ax)
            filled = np.where(grid.any(axis=other))[0]
            slices.append(slice(filled[0], filled[-1] + 1))
            shift.append(int(filled[0]))
        trimmed = grid[tuple(slices)].copy()
        obj._init_from_grid(trimmed, tuple(o + s for o, s in zip(origin, shift)))
        return obj

    @classmethod
    def from_box(cls, lo: tuple[int, ...], hi: tuple[int, ...]):
        box = Box(tuple(lo), tuple(hi))
        if len(lo) != cls.dim:
            raise ValueError(f"expected {cls.dim} coordinates")
        shape = tuple(b - a + 1 for a, b in zip(box.lo, box.hi))
        return cls.from_grid(np.ones(shape, dtype=bool), box.lo)

    @property
    def n(self) -> int:
        return self._n

    def __len__(self) -> int:
        return self._n

    @property
    def is_empty(self) -> bool:
        return self._n == 0

    @property
    def bbox(self) -> Box | None:
        if self._n == 0:
            return None
        lo = self._origin
        hi = tuple(o + s - 1 for o, s in zip(lo, self._grid.shape))
        return Box(lo, hi)

    def grid(self, pad: int = 0) -> tuple[np.ndarray, tuple[int, ...]]:
        """Occupancy array (optionally zero-padded) and its origin.

        The unpadded array is a read-only view; padded copies are fresh.
        """
        if pad == 0:
            return self._grid, self._origin
        padded = np.pad(self._grid, pad)
        return padded, tuple(o - pad for o in self._origin)

    def __contains__(self, p) -> bool:
        idx = tuple(int(c) - o for c, o in zip(p, self._origin))
        if len(idx) != self.dim:
            return False
        if any(i < 0 or i >= s for i, s in zip(idx, self._grid.shape)):
            return False
        return bool(self._grid[idx])

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for idx in np.argwhere(self._grid):
            yield tuple(int(i + o) for i, o in zip(idx, self._origin))

    def points(self) -> frozenset:
        return frozenset(self)

    def points_array(self) -> np.ndarray:
        """(n, dim) int64 array of points, lexicographically sorted."""
        return np.argwhere(self._grid) + np.array(self._origin, dtype=np.int64)

    def translate(self, v: tuple[int, ...]):
        if len(v) != self.dim:
            raise ValueError("translation vector has wrong dimension")
        obj = type(self).__new__(type(self))
        obj._init_from_grid(self._grid, tuple(o + int(d) for o, d in zip(self._origin, v)))
        return obj

    def _aligned(self, other):
        """Both grids embedded in the union bounding box."""
        if self.is_empty and other.is_empty:
            z = np.zeros((0,) * self.dim, dtype=bool)
            return z, z.copy(), (0,) * self.dim
        if self.is_empty:
            lo = other._origin
            shape = other._grid.shape
            return np.zeros(shape, dtype=bool), other._grid, lo
        if other.is_empty:
            return self._grid, np.zeros(self._grid.shape, dtype=bool), self._origin
        lo = tuple(min(a, b) for a, b in zip(self._origin, other._origin))
        hi = tuple(
            max(a + sa, b + sb)
            for a, sa, b, sb in zip(self._origin, self._grid.shape, other._origin, other._grid.shape)
        )
        shape = tuple(h - l for l, h in zip(lo, hi))
        ga = np.zeros(shape, dtype=bool)
        gb = np.zeros(shape, dtype=bool)
        sa = tuple(slice(o - l, o - l + s) for o, l, s in zip(self._origin, lo, self._grid.shape))
        sb = tuple(slice(o - l, o - l + s) for o, l, s in zip(other._origin, lo, other._grid.shape))
        ga[sa] = self._grid
        gb[sb] = other._grid
        return ga, gb, lo

    def union(self, other):
        ga, gb, lo = self._aligned(other)
        return type(self).from_grid(ga | gb, lo)

    def intersection(self, other):
        ga, gb, lo = self._aligned(other)
        return type(self).from_grid(ga & gb, lo)

    def difference(self, other):
        ga, gb, lo = self._aligned(other)
        return type(self).from_grid(ga & ~gb, lo)

    def __eq__(self, other) -> bool:
        if not isinstance(other, type(self)):
            return NotImplemented
        if self._n != other._n:
            return False
        if self._n == 0:
            return True
        return self._origin == other._origin and np.array_equal(self._grid, other._grid)

    __hash__ = None  # mutable-free but identity-hash would mislead

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self._n}, bbox={self.bbox})"


Box3 = Box


class Config2(_Config):
    dim = 2


class Config3(_Config):
    dim = 3


# ---------------------------------------------------------------------------
# Counting kernels
# ---------------------------------------------------------------------------

def bond_count(c: _Config) -> int:
    """Number of unordered nearest-neighbor pairs inside c."""
    g = c._grid
    total = 0
    for ax in range(c.dim):
        a = tuple(slice(0, -1) if i == ax else slice(None) for i in range(c.dim))
        b = tuple(slice(1, None) if i == ax else slice(None) for i in range(c.dim))
        if g.shape[ax] >= 2:
            total += int((g[a] & g[b]).sum())
    return total


def edge_perimeter(c: _Config) -> int:
    """Number of ordered pairs (x, y), |x-y| = 1, x in c, y not in c.

    Counted directly on a padded grid (not via the bond relation), so the
    identity perimeter + 2*bonds == 2*dim*n stays an honest cross-check.
    """
    if c.is_empty:
        return 0
    g = np.pad(c._grid, 1)
    total = 0
    for ax in range(c.dim):
        inner = tuple(slice(1, -1) if i == ax else slice(None) for i in range(c.dim))
        lo = tuple(slice(0, -2) if i == ax else slice(None) for i in range(c.dim))
        hi = tuple(slice(2, None) if i == ax else slice(None) for i in range(c.dim))
        mid = g[inner]
        total += int((mid & ~g[lo]).sum()) + int((mid & ~g[hi]).sum())
    return total


def level(c: Config3, axis: int, z: int) -> Config3:
    """Subset of c in the plane {coordinate[axis-1] == z}, coordinates kept."""
    if axis not in (1, 2, 3):
        raise ValueError("axis must be 1, 2 or 3")
    ax = axis - 1
    if c.is_empty:
        return Config3()
    lo = c._origin[ax]
    idx = z - lo
    if idx < 0 or idx >= c._grid.shape[ax]:
        return Config3()
    slicer = tuple(idx if i == ax else slice(None) for i in range(3))
    plane = c._grid[slicer]
    grid = np.expand_dims(plane, ax)
    origin = tuple(z if i == ax else c._origin[i] for i in range(3))
    return Config3.from_grid(grid, origin)


def minimal_cuboid(c: Config3) -> Box:
    """Tightest axis-aligned box containing c; error "empty" on no points."""
    box = c.bbox
    if box is None:
        raise EmptyConfigError("empty")
    return box


def minimal_rectangle(c: Config3) -> Box:
    """Tightest rectangle containing a planar 3D configuration.

    The points must share one coordinate; the result is the bounding box,
    degenerate along the shared axis.
    """
    box = c.bbox
    if box is None:
        raise EmptyConfigError("empty")
    if not any(l == h for l, h in zip(box.lo, box.hi)):
        raise NotPlanarError("not planar")
    return box


def three_vacancies(c: Config3) -> frozenset[Point3]:
    """Lattice points outside c adjacent to exactly three points of c."""
    if c.is_empty:
        return frozenset()
    g, origin = c.grid(pad=1)
    count = np.zeros(g.shape, dtype=np.int8)
    for ax in range(3):
        lo = tuple(slice(0, -1) if i == ax else slice(None) for i in range(3))
        hi = tuple(slice(1, None) if i == ax else slice(None) for i in range(3))
        count[lo] += g[hi]
        count[hi] += g[lo]
    vac = ~g & (count == 3)
    pts = np.argwhere(vac) + np.array(origin, dtype=np.int64)
    return frozenset(tuple(int(v) for v in p) for p in pts)


def sym_diff_size(a: _Config, b: _Config) -> int:
    """#(a XOR b); equals #a + #b - 2*#(a AND b)."""
    ga, gb, _ = a._aligned(b)
    return int((ga ^ gb).sum())


def translate(c: _Config, v: tuple[int, ...]) -> _Config:
    return c.translate(v)


def is_connected(c: _Config) -> bool:
    """Bond-graph connectivity (empty and singleton count as connected)."""
    if c.n <= 1:
        return True
    structure = ndimage.generate_binary_structure(c.dim, 1)
    _, parts = ndimage.label(c._grid, structure=structure)
    return parts == 1


def signed_axis_maps(dim: int):
    """All signed axis permutations (8 maps in 2D, 48 in 3D)."""
    from itertools import permutations, product

    for perm in permutations(range(dim)):
        for signs in product((1, -1), repeat=dim):
            yield perm, signs


def apply_axis_map(c: _Config, perm: tuple[int, ...], signs: tuple[int, ...]) -> _Config:
    """Apply the isometry p -> (signs[i] * p[perm[i]])_i to every point."""
    grid = np.transpose(c._grid, perm)
    origin = [c._origin[p] for p in perm]
    shape = grid.shape
    for ax, s in enumerate(signs):
        if s < 0:
            grid = np.flip(grid, axis=ax)
            origin[ax] = -(origin[ax] + shape[ax] - 1)
    return type(c).from_grid(np.ascontiguousarray(grid), tuple(origin))


# ---------------------------------------------------------------------------
# Text format: one point per line, space-separated decimal integers,
# '#' comment lines; duplicates are a parse error.
# ---------------------------------------------------------------------------

def parse_config(text: str, dim: int | None = None) -> _Config:
    points: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            p = tuple(int(f) for f in fields)
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer coordinate") from None
        if dim is None:
            if len(p) not in (2, 3):
                raise ParseError(f"line {lineno}: expected 2 or 3 columns, got {len(p)}")
            dim = len(p)
        elif len(p) != dim:
            raise ParseError(f"line {lineno}: expected {dim} columns, got {len(p)}")
        if p in seen:
            raise ParseError(f"line {lineno}: duplicate point {' '.join(fields)}")
        seen.add(p)
        points.append(p)
    if dim is None:
        raise ParseError("no points and no dimension hint")
    cls = Config2 if dim == 2 else Config3
    return cls(points)


def load_config(path, dim: int | None = None) -> _Config:
    with open(path, "r", encoding="ascii") as fh:
        return parse_config(fh.read(), dim=dim)


def dump_config(c: _Config) -> str:
    rows = (" ".join(str(v) for v in p) for p in c)
    return "\n".join(rows) + "\n" if c.n else ""


def save_config(c: _Config, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dump_config(c))
