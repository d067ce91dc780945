"""Bond-preserving rearrangement of 3D minimizers into quasicubes.

``cuboidify`` rewrites a minimizer level by level:

  (i)   every nonempty z-level is replaced by the canonical daisy of the
        same cardinality and the daisies are stacked in decreasing size
        (stable for ties); with at most two levels the algorithm stops here;
  (ii)  cells with at most three bonds are moved off the top level into
        3-vacancies of the levels below, lowest level first, so each
        middle level becomes a near-square rectangle or an exact copy of
        the bottom daisy;
  (iii) whole edges are moved off the top level to grow every middle
        level to the full footprint of the bottom rectangle.

Because canonical daisies are nested and grow along a fixed cell chain,
the whole intermediate state is a list of per-level shapes and every move
has exact integer bond accounting: in-plane bonds of a daisy level equal
the closed 2D maximum, vertical bonds between stacked levels equal the
upper cardinality.  The running bond count is checked after every step;
any change proves the input was not a minimizer and aborts.

The result is normalized into quasicube form: a full base block, at most
one partial top face, and at most one partial side face on the x = s+1
wall (extra lines that the daisies carry on top are rotated onto the
wall, a bond-neutral move).  ``merge_side_face`` then removes the side
face, yielding a configuration that is a full box plus a single top face.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import (
    Config3,
    EmptyConfigError,
    bond_count,
    minimal_cuboid,
)
from .planar import build_daisy, daisy_cell, daisy_dims, max_bonds2

__all__ = [
    "NotMinimizerError",
    "MalformedQuasicubeError",
    "TraceStep",
    "RearrangementTrace",
    "QuasicubeDescriptor",
    "validate_quasicube",
    "cuboidify",
    "merge_side_face",
    "is_box_plus_face",
]


class NotMinimizerError(ValueError):
    """A rearrangement step changed the bond count."""


class MalformedQuasicubeError(ValueError):
    """Input does not have the expected quasicube structure."""


@dataclass(frozen=True)
class TraceStep:
    label: str
    moved: int
    bonds: int


@dataclass
class RearrangementTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def add(self, label: str, moved: int, bonds: int) -> None:
        self.steps.append(TraceStep(label, moved, bonds))

    def bonds_constant(self) -> bool:
        return len({s.bonds for s in self.steps}) <= 1

    def to_csv(self) -> str:
        rows = ["step_label,moved_points,bonds"]
        rows += [f"{s.label},{s.moved},{s.bonds}" for s in self.steps]
        return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class QuasicubeDescriptor:
    """Quasicube decomposition: a full width x height x (levels-1) base
    block anchored at (1,1,1)+base_origin, a top face at z = levels inside
    [1, width+1] x [1, height], and a side face on the x = width+1 wall
    with y <= height-1."""

    width: int
    height: int
    levels: int
    top_face: Config3
    side_face: Config3
    base_origin: tuple[int, int, int] = (0, 0, 0)

    def base_block(self) -> Config3:
        ox, oy, oz = self.base_origin
        if self.levels <= 1:
            return Config3()
        return Config3.from_box(
            (ox + 1, oy + 1, oz + 1),
            (ox + self.width, oy + self.height, oz + self.levels - 1),
        )


def validate_quasicube(cfg: Config3, desc: QuasicubeDescriptor) -> None:
    """Raise MalformedQuasicubeError unless desc exactly reproduces cfg."""
    w, h, lv = desc.width, desc.height, desc.levels
    ox, oy, oz = desc.base_origin
    if h not in (w, w + 1):
        raise MalformedQuasicubeError("height must be width or width+1")
    if lv < 1:
        raise MalformedQuasicubeError("levels must be >= 1")
    for p in desc.top_face:
        x, y, z = p[0] - ox, p[1] - oy, p[2] - oz
        if z != lv or not (1 <= x <= w + 1 and 1 <= y <= h):
            raise MalformedQuasicubeError(f"top face cell {p} out of bounds")
    for p in desc.side_face:
        x, y, z = p[0] - ox, p[1] - oy, p[2] - oz
        if x != w + 1 or not (1 <= y <= h - 1 and 1 <= z <= lv):
            raise MalformedQuasicubeError(f"side face cell {p} out of bounds")
    union = desc.base_block().union(desc.top_face).union(desc.side_face)
    if union != cfg:
        raise MalformedQuasicubeError("decomposition does not reproduce the configuration")


# ---------------------------------------------------------------------------
# Level-stack state: shapes are ("daisy", d) or ("rect", a, b), all anchored
# at (1, 1) in their plane.
# ---------------------------------------------------------------------------

def _shape_card(shape) -> int:
    if shape[0] == "daisy":
        return shape[1]
    return shape[1] * shape[2]


def _shape_inplane(shape) -> int:
    if shape[0] == "daisy":
        return max_bonds2(shape[1])
    a, b = shape[1], shape[2]
    return 2 * a * b - a - b


def _stack_bonds(shapes) -> int:
    """Total bonds of nested stacked levels: in-plane plus one vertical bond
    per cell of every level above the first."""
    total = sum(_shape_inplane(s) for s in shapes)
    total += sum(_shape_card(s) for s in shapes[1:])
    return total


def _shape_grid(shape, size_x: int, size_y: int) -> np.ndarray:
    g = np.zeros((size_x, size_y), dtype=bool)
    if shape[0] == "daisy":
        w, h, e = daisy_dims(shape[1])
        g[:w, :h] = True
        if e:
            if h == w:
                g[:e, h] = True
            else:
                g[w, :e] = True
    else:
        g[: shape[1], : shape[2]] = True
    return g


def _materialize(shapes) -> Config3:
    dims = []
    for s in shapes:
        if s[0] == "daisy":
            w, h, e = daisy_dims(s[1])
            dims.append((w + (1 if e and h == w + 1 else 0), h + (1 if e and h == w else 0)))
        else:
            dims.append((s[1], s[2]))
    size_x = max(d[0] for d in dims)
    size_y = max(d[1] for d in dims)
    grid = np.zeros((size_x, size_y, len(shapes)), dtype=bool)
    for k, s in enumerate(shapes):
        grid[:, :, k] = _shape_grid(s, size_x, size_y)
    return Config3.from_grid(grid, (1, 1, 1))


def _orient(m: Config3) -> Config3:
    """Swap axes so axis 3 has the fewest nonempty levels (ties keep 3, 2, 1)."""
    pts = m.points_array()
    counts = [len(np.unique(pts[:, ax])) for ax in range(3)]
    axis = 2
    if counts[1] < counts[axis]:
        axis = 1
    if counts[0] < counts[axis]:
        axis = 0
    if axis == 2:
        return m
    perm = [0, 1, 2]
    perm[axis], perm[2] = perm[2], perm[axis]
    from .lattice import apply_axis_map

    return apply_axis_map(m, tuple(perm), (1, 1, 1))


def _level_sizes(m: Config3) -> list[int]:
    grid, _ = m.grid()
    sizes = grid.sum(axis=(0, 1))
    return [int(v) for v in sizes if v > 0]


class _Exhausted(Exception):
    pass


def _pop_top(shapes, count: int) -> int:
    """Remove count cells from the top daisy; returns the bond loss."""
    top = shapes[-1]
    if top[0] != "daisy":
        raise AssertionError("top level must stay a daisy")
    d = top[1]
    if d - count < 1:
        raise _Exhausted()
    loss = max_bonds2(d) - max_bonds2(d - count) + count  # in-plane + vertical
    shapes[-1] = ("daisy", d - count)
    return loss


def _fill_levels(shapes, trace: RearrangementTrace, bonds: int) -> int:
    """Step (ii): grow middle daisies into their 3-vacancies using cells
    popped off the top level; returns the (unchanged) bond count."""
    f = len(shapes)
    for z in range(1, f - 1):  # levels 2 .. f-1, 0-indexed
        moved = 0
        while True:
            shape = shapes[z]
            if shape[0] != "daisy":
                break
            d = shape[1]
            below = _shape_card(shapes[z - 1])
            if d + 1 > below:
                break  # no supporting cell underneath: level is a full copy
            gain_inplane = max_bonds2(d + 1) - max_bonds2(d)
            if gain_inplane != 2:
                break  # next chain cell starts a new line: not a 3-vacancy
            gain = gain_inplane + 1
            try:
                loss = _pop_top(shapes, 1)
            except _Exhausted:
                raise NotMinimizerError("input is not an EIP minimizer: top level exhausted")
            shapes[z] = ("daisy", d + 1)
            bonds += gain - loss
            moved += 1
            if gain != loss:
                raise NotMinimizerError("input is not an EIP minimizer: bond count changed")
        if moved:
            trace.add(f"fill-z{z + 1}", moved, bonds)
    return bonds


def _grow_levels(shapes, trace: RearrangementTrace, bonds: int) -> int:
    """Step (iii): extend middle levels to the full bottom footprint by
    moving whole edges off the top level."""
    f = len(shapes)
    d1 = _shape_card(shapes[0])
    s, sp, _ = daisy_dims(d1)
    for z in range(1, f - 1):
        shape = shapes[z]
        if _shape_card(shape) == d1:
            continue  # exact copy of the bottom daisy: procedure is empty
        if shape[0] == "daisy":
            w, h, e = daisy_dims(shape[1])
            if e != 0:
                raise AssertionError("partial middle level that is not a copy")
            shape = ("rect", w, h)
        a, b = shape[1], shape[2]
        moved = 0
        while a < s:  # add columns of height b
            gain = 3 * b - 1
            try:
                loss = _pop_top(shapes, b)
            except _Exhausted:
                raise NotMinimizerError("input is not an EIP minimizer: top level exhausted")
            a += 1
            bonds += gain - loss
            moved += b
            if gain != loss:
                raise NotMinimizerError("input is not an EIP minimizer: bond count changed")
        while b < sp:  # add rows of length s
            gain = 3 * s - 1
            try:
                loss = _pop_top(shapes, s)
            except _Exhausted:
                raise NotMinimizerError("input is not an EIP minimizer: top level exhausted")
            b += 1
            bonds += gain - loss
            moved += s
            if gain != loss:
                raise NotMinimizerError("input is not an EIP minimizer: bond count changed")
        shapes[z] = ("daisy", a * b) if b in (a, a + 1) else ("rect", a, b)
        if moved:
            trace.add(f"grow-z{z + 1}", moved, bonds)
    return bonds


def _normalize_side(cfg: Config3, width: int, height: int) -> tuple[Config3, int]:
    """Rotate cells protruding at y = height+1 onto the x = width+1 wall.

    (x, height+1, z) -> (width+1, x, z) is bond-preserving for daisy extra
    lines: in-slab adjacency is mapped rigidly and each cell keeps exactly
    one contact with the base block.
    """
    grid, origin = cfg.grid()
    gx, gy, gz = grid.shape
    iy = height + 1 - origin[1]
    if iy < 0 or iy >= gy:
        return cfg, 0
    protruding = np.argwhere(grid[:, iy, :])
    if protruding.size == 0:
        return cfg, 0
    new_x = width + 1 - origin[0]
    need_x = max(gx, new_x + 1)
    out = np.zeros((need_x, gy, gz), dtype=bool)
    out[:gx] = grid
    out[:, iy, :] = False
    for px, pz in protruding:
        ty = px + origin[0] - origin[1]  # new y index = old x coordinate - y origin
        if out[new_x, ty, pz]:
            raise MalformedQuasicubeError("side normalization collision")
        out[new_x, ty, pz] = True
    return Config3.from_grid(out, origin), len(protruding)


def cuboidify(m: Config3, orient: bool = True
              ) -> tuple[Config3, QuasicubeDescriptor, RearrangementTrace]:
    """Rearrange an EIP minimizer into quasicube normal form.

    Returns the rearranged configuration, its quasicube decomposition, and
    the step trace.  Raises NotMinimizerError if any step changes the bond
    count (which certifies the input was not a minimizer) and
    EmptyConfigError on empty input.  With orient=False the given z axis
    is kept as the stacking direction instead of picking the axis with the
    fewest nonempty levels (used when re-running on already-stacked
    intermediates whose direction is fixed).
    """
    if m.is_empty:
        raise EmptyConfigError("empty")
    bonds_in = bond_count(m)
    trace = RearrangementTrace()
    trace.add("input", 0, bonds_in)

    oriented = _orient(m) if orient else m
    sizes = _level_sizes(oriented)
    order = sorted(range(len(sizes)), key=lambda i: (-sizes[i], i))
    shapes = [("daisy", sizes[i]) for i in order]
    f = len(shapes)

    bonds = _stack_bonds(shapes)
    moved = _count_moved(oriented, shapes)
    trace.add("stack-levels", moved, bonds)
    if bonds != bonds_in:
        raise NotMinimizerError("input is not an EIP minimizer: bond count changed")

    if f > 2:
        bonds = _fill_levels(shapes, trace, bonds)
        bonds = _grow_levels(shapes, trace, bonds)

    cfg = _materialize(shapes)
    d1 = _shape_card(shapes[0])
    width, height, _ = daisy_dims(d1)
    cfg, rotated = _normalize_side(cfg, width, height)
    if rotated:
        trace.add("normalize-side", rotated, bond_count(cfg))

    bonds_out = bond_count(cfg)
    if bonds_out != bonds_in or cfg.n != m.n:
        raise NotMinimizerError("input is not an EIP minimizer: bond count changed")

    desc = _extract_descriptor(cfg, width, height, f)
    validate_quasicube(cfg, desc)
    return cfg, desc, trace


def _count_moved(before: Config3, shapes) -> int:
    box = before.bbox
    anchored = before.translate(tuple(1 - v for v in box.lo))
    return _materialize(shapes).difference(anchored).n


def _extract_descriptor(cfg: Config3, width: int, height: int, levels: int) -> QuasicubeDescriptor:
    grid, origin = cfg.grid()
    if origin != (1, 1, 1):
        raise MalformedQuasicubeError("configuration is not anchored at (1,1,1)")
    top = Config3.from_grid(grid[:, :, levels - 1 :], (1, 1, levels))
    wall_idx = width  # x == width+1 in grid indices
    side = Config3()
    if grid.shape[0] > wall_idx:
        wall = np.zeros_like(grid)
        wall[wall_idx, :, : levels] = grid[wall_idx, :, : levels]
        side = Config3.from_grid(wall, (1, 1, 1))
    return QuasicubeDescriptor(width, height, levels, top, side)


# ---------------------------------------------------------------------------
# Side-face merge
# ---------------------------------------------------------------------------

def is_box_plus_face(cfg: Config3) -> bool:
    """True iff every z-level except the highest is one identical full rectangle."""
    if cfg.is_empty:
        return False
    grid, _ = cfg.grid()
    nz = grid.shape[2]
    if nz == 1:
        return True
    base = grid[:, :, 0]
    xs = int(base.any(axis=1).sum())
    ys = int(base.any(axis=0).sum())
    if base.sum() != xs * ys or not base[:xs, :ys].all():
        return False
    for k in range(1, nz - 1):
        if not np.array_equal(grid[:, :, k], base):
            return False
    return bool((grid[:, :, nz - 1] & ~base).sum() == 0)


def _grid_bonds(grid: np.ndarray) -> int:
    total = 0
    for ax in range(3):
        a = [slice(None)] * 3
        b = [slice(None)] * 3
        a[ax] = slice(0, -1)
        b[ax] = slice(1, None)
        if grid.shape[ax] >= 2:
            total += int((grid[tuple(a)] & grid[tuple(b)]).sum())
    return total


class _MergeState:
    """Mutable working grid anchored at (1,1,1); every batch re-checks bonds."""

    def __init__(self, grid: np.ndarray, bonds: int):
        self.grid = grid
        self.bonds = bonds

    def move(self, removals, additions, label: str) -> None:
        for idx in removals:
            if not self.grid[idx]:
                raise MalformedQuasicubeError(f"{label}: removing empty cell {idx}")
            self.grid[idx] = False
        for idx in additions:
            if self.grid[idx]:
                raise MalformedQuasicubeError(f"{label}: target cell occupied {idx}")
            self.grid[idx] = True
        if _grid_bonds(self.grid) != self.bonds:
            raise NotMinimizerError(f"not a minimizer: bond count changed during {label}")


def _parse_merge_input(grid: np.ndarray):
    """Read (s, s', wall column heights) off an anchored quasicube grid."""
    gx, gy, gz = grid.shape
    s3 = gz
    col0 = grid[0, :, 0]
    sp = int(col0.sum())
    if sp == 0 or not col0[:sp].all():
        raise MalformedQuasicubeError("bottom level has no contiguous x=1 column")
    row = grid[:, sp - 1, 0]
    s = int(row.sum())
    if s == 0 or not row[:s].all():
        raise MalformedQuasicubeError("bottom level top row is not contiguous")
    if sp not in (s, s + 1):
        raise MalformedQuasicubeError("base is not near-square")
    if gx > s + 1:
        raise MalformedQuasicubeError("cells beyond the x = s+1 wall")
    if s3 > 1 and not grid[:s, :sp, : s3 - 1].all():
        raise MalformedQuasicubeError("base block has holes")
    if s3 > 1 and gy > sp and grid[:, sp:, : s3 - 1].any():
        raise MalformedQuasicubeError("cells beyond y = s' below the top level")
    heights = np.zeros(sp, dtype=np.int64)
    if gx == s + 1 and s3 > 1:
        wall = grid[s, :, : s3 - 1]
        for y in range(sp):
            h = int(wall[y].sum())
            if h and not wall[y, :h].all():
                raise MalformedQuasicubeError("wall column not grounded")
            heights[y] = h
        nz = heights > 0
        if nz.any() and not nz[: int(nz.sum())].all():
            raise MalformedQuasicubeError("wall columns are not a contiguous prefix")
    return s, sp, s3, heights


def merge_side_face(q: Config3) -> Config3:
    """Fold the side face of a quasicubic minimizer away.

    Returns an equal-cardinality, equal-bond configuration that is a full
    box plus a single top face (a in {s, s+1} columns wide and c in
    {s3-1, s3} levels high in terms of the input's quasicube parameters).
    The top face is maintained as a canonical daisy so each donated batch
    has exact bond accounting; any bond change aborts with
    NotMinimizerError.
    """
    if q.is_empty:
        raise EmptyConfigError("empty")
    bonds_in = bond_count(q)
    n_in = q.n
    box = minimal_cuboid(q)
    cfg = q.translate(tuple(1 - v for v in box.lo))
    grid0, _ = cfg.grid()
    if grid0.shape[2] == 1:
        return cfg  # single level: a (degenerate) box plus one face

    s, sp, s3, heights = _parse_merge_input(grid0)
    work = np.zeros((max(grid0.shape[0], s + 1), max(grid0.shape[1], sp + 1), s3 + 1),
                    dtype=bool)
    work[: grid0.shape[0], : grid0.shape[1], : grid0.shape[2]] = grid0
    state = _MergeState(work, bonds_in)

    # overlap of the top level with the wall plane x = s+1
    overlap_col = work[s, :, s3 - 1] if work.shape[0] > s else np.zeros(0, dtype=bool)
    e_f = int(overlap_col.sum())
    if e_f and not overlap_col[:e_f].all():
        raise MalformedQuasicubeError("wall-plane top cells are not a contiguous column")

    s2 = int(heights.max()) if heights.any() else 0
    e = int((heights > 0).sum())

    if e_f:
        if e_f <= s2:
            # slide the overlap line down onto a fresh wall column at y = e+1
            state.move([(s, y, s3 - 1) for y in range(e_f)],
                       [(s, e, z) for z in range(e_f)], "shift-overlap")
            heights[e] = e_f
        else:
            # wall shorter than the overlap: stack the whole side face on top
            return _stack_wall_on_top(state, s, sp, s3, heights,
                                      include_overlap=True, bonds_in=bonds_in, n_in=n_in)

    # keep the remaining top face canonical from here on
    d_top = int(work[:, :, s3 - 1].sum())
    target = np.zeros(work.shape[:2], dtype=bool)
    w0, h0, e0 = daisy_dims(d_top)
    target[:w0, :h0] = True
    if e0:
        if h0 == w0:
            target[:e0, h0] = True
        else:
            target[w0, :e0] = True
    if not np.array_equal(target, work[:, :, s3 - 1]):
        work[:, :, s3 - 1] = target
        if _grid_bonds(work) != bonds_in:
            raise NotMinimizerError("not a minimizer: bond count changed during top-normalize")

    def pop_face(count: int, label: str) -> list[tuple[int, int, int]]:
        nonlocal d_top
        if d_top - count < 1:
            raise NotMinimizerError(f"not a minimizer: top face exhausted during {label}")
        removals = []
        for k in range(d_top, d_top - count, -1):
            x, y = daisy_cell(k)
            removals.append((x - 1, y - 1, s3 - 1))
        d_top -= count
        return removals

    if not heights.any():
        out = Config3.from_grid(state.grid, (1, 1, 1))
        if bond_count(out) != bonds_in or out.n != n_in:
            raise NotMinimizerError("not a minimizer: bond count changed")
        return out

    s2 = int(heights.max())
    e = int((heights > 0).sum())
    a_f = daisy_dims(d_top)[0]

    if a_f >= max(e, s2):
        return _stack_wall_on_top(state, s, sp, s3, heights,
                                  include_overlap=False, bonds_in=bonds_in, n_in=n_in)

    # ragged wall (possible after shift-overlap): top short columns up first
    for y in range(e):
        h = int(heights[y])
        if 0 < h < s2:
            state.move(pop_face(s2 - h, "wall-top-up"),
                       [(s, y, z) for z in range(h, s2)], "wall-top-up")
            heights[y] = s2

    if a_f < e:
        # rows to full height, then columns to full width
        for z in range(s2, s3 - 1):
            state.move(pop_face(e, "grow-wall-rows"),
                       [(s, y, z) for y in range(e)], "grow-wall-rows")
        for y in range(e, sp):
            state.move(pop_face(s3 - 1, "grow-wall-cols"),
                       [(s, y, z) for z in range(s3 - 1)], "grow-wall-cols")
    else:
        # a_f below the wall height: columns at the current height first, then rows
        for y in range(e, sp):
            state.move(pop_face(s2, "grow-wall-cols"),
                       [(s, y, z) for z in range(s2)], "grow-wall-cols")
        for z in range(s2, s3 - 1):
            state.move(pop_face(sp, "grow-wall-rows"),
                       [(s, y, z) for y in range(sp)], "grow-wall-rows")

    out = Config3.from_grid(state.grid, (1, 1, 1))
    if bond_count(out) != bonds_in or out.n != n_in:
        raise NotMinimizerError("not a minimizer: bond count changed")
    return out


def _stack_wall_on_top(state: _MergeState, s: int, sp: int, s3: int, heights,
                       include_overlap: bool, bonds_in: int, n_in: int) -> Config3:
    """Move all wall cells to a fresh daisy level above the top face and
    re-run cuboidification (the a_f >= max(e, s'') case)."""
    removals = []
    for y in range(len(heights)):
        for z in range(int(heights[y])):
            removals.append((s, y, z))
    if include_overlap:
        for y in range(sp + 1):
            if y < state.grid.shape[1] and state.grid[s, y, s3 - 1]:
                removals.append((s, y, s3 - 1))
    _, wall_daisy = build_daisy(len(removals))
    additions = [(x - 1, y - 1, s3) for (x, y) in wall_daisy]
    state.move(removals, additions, "stack-side-face")
    stacked = Config3.from_grid(state.grid, (1, 1, 1))
    out, _, _ = cuboidify(stacked, orient=False)
    if bond_count(out) != bonds_in or out.n != n_in:
        raise NotMinimizerError("not a minimizer: bond count changed")
    return out
