"""Exhaustive ground truth for small configurations.

Connected configurations (polyominoes in 2D, polycubes in 3D) are
enumerated up to translation with the canonical-root scheme: the root
cell is the lexicographic minimum of the configuration, growth is
restricted to the half-space of cells ordered after the root, and each
frontier cell is offered exactly once per search branch.  Every fixed
configuration of each size up to the requested maximum is therefore
visited exactly once, with no storage of visited shapes.

Restricting the search to connected configurations is justified: a
disconnected bond maximizer can always be improved by translating one
component into contact with another, so for n >= 2 every bond maximizer
is connected.  ``verify_connectivity_reduction`` additionally machine-
checks the reduction at tiny sizes by scanning all subsets of a box.

Records (minimum perimeter, maximum bonds, attaining count, sample
minimizers) are cached to a small versioned text file because full
enumerations take seconds to minutes while tests want instant re-runs.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .lattice import Config2, Config3, _Config

__all__ = [
    "GuardrailError",
    "OracleRecord",
    "MAX_N_2D",
    "MAX_N_3D",
    "enumerate_connected",
    "sweep_records",
    "theta2_bruteforce",
    "theta3_bruteforce",
    "verify_connectivity_reduction",
    "default_cache_dir",
]

MAX_N_2D = 14
MAX_N_3D = 10
SAMPLE_CAP = 100
CACHE_FORMAT = 1

CACHE_ENV = "EDGEISO_CACHE_DIR"


class GuardrailError(ValueError):
    """Requested size beyond the default enumeration guardrail."""


@dataclass
class OracleRecord:
    dimension: int
    n: int
    min_perimeter: int
    max_bonds: int
    minimizer_count: int
    sample_minimizers: list[tuple[tuple[int, ...], ...]] = field(default_factory=list)

    def sample_configs(self) -> list[_Config]:
        cls = Config2 if self.dimension == 2 else Config3
        return [cls(pts) for pts in self.sample_minimizers]


def _check_guardrail(dim: int, n: int, force: bool) -> None:
    limit = MAX_N_2D if dim == 2 else MAX_N_3D
    if n > limit and not force:
        raise GuardrailError(
            f"n={n} beyond the {dim}D guardrail ({limit}); pass force=True to override"
        )
    if n < 1:
        raise ValueError("n must be >= 1")


def _build_tables(dim: int, n: int):
    """Linear cell indexing over the reachable half-space domain.

    Cells are points reachable from the root (origin) in <= n-1 steps that
    are ordered at or after the origin lexicographically by reversed
    coordinates (z, y, x); the precomputed neighbor table only contains
    in-domain cells, which enforces the canonical-root constraint.
    """
    r = n - 1
    if dim == 2:
        axes = [range(-r, r + 1), range(0, r + 1)]
    else:
        axes = [range(-r, r + 1), range(-r, r + 1), range(0, r + 1)]
    sizes = [len(a) for a in axes]
    los = [a[0] for a in axes]

    def encode(p):
        idx = 0
        for c, lo, s in zip(p, los, sizes):
            idx = idx * s + (c - lo)
        return idx

    total = 1
    for s in sizes:
        total *= s

    def in_domain(p):
        for c, lo, s in zip(p, los, sizes):
            if not lo <= c < lo + s:
                return False
        # after-the-root order on (last coord, ..., first coord)
        for c in reversed(p):
            if c > 0:
                return True
            if c < 0:
                return False
        return True  # the origin itself

    deltas = []
    for ax in range(dim):
        for sign in (1, -1):
            d = [0] * dim
            d[ax] = sign
            deltas.append(tuple(d))

    from itertools import product

    coords = {}
    neighbors: list[tuple[int, ...]] = [()] * total
    for p in product(*axes):
        if in_domain(p):
            coords[encode(p)] = p
    for idx, p in coords.items():
        nbrs = []
        for d in deltas:
            q = tuple(a + b for a, b in zip(p, d))
            if in_domain(q) and abs(q[0]) <= r and (dim == 2 or abs(q[1]) <= r) and q[-1] <= r:
                nbrs.append(encode(q))
        neighbors[idx] = tuple(nbrs)
    return encode(tuple([0] * dim)), neighbors, coords, total


def _search(dim: int, n_max: int, visit) -> None:
    """Run the enumeration, calling visit(size, bonds, placed_cells) per config.

    The untried frontier is a cons chain (cell, rest): each level walks its
    own chain head while children prepend fresh frontier cells onto the
    shared remainder, so sibling subtrees can never disturb one another.
    """
    root, neighbors, coords, total = _build_tables(dim, n_max)
    occupied = bytearray(total)
    seen = bytearray(total)
    placed: list[int] = []

    def rec(chain, bonds: int) -> None:
        size1 = len(placed) + 1
        while chain is not None:
            c, chain = chain
            nb = neighbors[c]
            delta = 0
            for q in nb:
                if occupied[q]:
                    delta += 1
            b2 = bonds + delta
            occupied[c] = 1
            placed.append(c)
            visit(size1, b2, placed)
            if size1 < n_max:
                child = chain
                added = []
                for q in nb:
                    if not seen[q]:
                        seen[q] = 1
                        added.append(q)
                        child = (q, child)
                rec(child, b2)
                for q in added:
                    seen[q] = 0
            occupied[c] = 0
            placed.pop()

    seen[root] = 1
    rec((root, None), 0)


def enumerate_connected(dim: int, n: int, visitor=None, force: bool = False) -> int:
    """Visit every connected n-cell configuration once up to translation.

    ``visitor``, if given, receives each configuration as a tuple of
    coordinate tuples.  Returns the number of size-n configurations.
    """
    if dim not in (2, 3):
        raise ValueError("dimension must be 2 or 3")
    _check_guardrail(dim, n, force)
    root, neighbors, coords, total = _build_tables(dim, n)
    count = 0

    if visitor is None:
        def visit(size, bonds, placed):
            nonlocal count
            if size == n:
                count += 1
    else:
        def visit(size, bonds, placed):
            nonlocal count
            if size == n:
                count += 1
                visitor(tuple(coords[c] for c in placed))

    _search(dim, n, visit)
    return count


def sweep_records(dim: int, n_max: int, force: bool = False,
                  sample_cap: int = SAMPLE_CAP) -> list[OracleRecord]:
    """Exhaustive records for every size 1..n_max in a single enumeration."""
    if dim not in (2, 3):
        raise ValueError("dimension must be 2 or 3")
    _check_guardrail(dim, n_max, force)
    root, neighbors, coords, total = _build_tables(dim, n_max)
    degree = 2 * dim
    best = [-1] * (n_max + 1)
    count_at_best = [0] * (n_max + 1)
    samples: list[list] = [[] for _ in range(n_max + 1)]

    def visit(size, bonds, placed):
        b = best[size]
        if bonds > b:
            best[size] = bonds
            count_at_best[size] = 1
            samples[size] = [tuple(coords[c] for c in placed)]
        elif bonds == b:
            count_at_best[size] += 1
            if len(samples[size]) < sample_cap:
                samples[size].append(tuple(coords[c] for c in placed))

    _search(dim, n_max, visit)
    return [
        OracleRecord(
            dimension=dim,
            n=k,
            min_perimeter=degree * k - 2 * best[k],
            max_bonds=best[k],
            minimizer_count=count_at_best[k],
            sample_minimizers=samples[k],
        )
        for k in range(1, n_max + 1)
    ]


# ---------------------------------------------------------------------------
# Cache
# ---------------------------------------------------------------------------

def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "edgeiso"


def _cache_path(cache_dir: Path, dim: int, n: int) -> Path:
    return Path(cache_dir) / f"oracle{dim}d_n{n}_v{CACHE_FORMAT}.txt"


def _write_record(path: Path, rec: OracleRecord) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        f"edgeiso-oracle {CACHE_FORMAT}",
        f"dimension {rec.dimension}",
        f"n {rec.n}",
        f"min_perimeter {rec.min_perimeter}",
        f"max_bonds {rec.max_bonds}",
        f"minimizer_count {rec.minimizer_count}",
        f"samples {len(rec.sample_minimizers)}",
    ]
    for pts in rec.sample_minimizers:
        lines.append("sample")
        for p in pts:
            lines.append(" ".join(str(v) for v in p))
    path.write_text("\n".join(lines) + "\n", encoding="ascii")


def _read_record(path: Path) -> OracleRecord | None:
    try:
        lines = path.read_text(encoding="ascii").splitlines()
    except FileNotFoundError:
        return None
    if not lines or lines[0] != f"edgeiso-oracle {CACHE_FORMAT}":
        return None
    header = {}
    i = 1
    while i < len(lines) and lines[i] and lines[i] != "sample":
        key, val = lines[i].split(maxsplit=1)
        header[key] = int(val)
        i += 1
    samples = []
    current: list[tuple[int, ...]] | None = None
    for line in lines[i:]:
        if line == "sample":
            if current is not None:
                samples.append(tuple(current))
            current = []
        elif line.strip():
            current.append(tuple(int(v) for v in line.split()))
    if current is not None:
        samples.append(tuple(current))
    return OracleRecord(
        dimension=header["dimension"],
        n=header["n"],
        min_perimeter=header["min_perimeter"],
        max_bonds=header["max_bonds"],
        minimizer_count=header["minimizer_count"],
        sample_minimizers=samples,
    )


def _bruteforce(dim: int, n: int, cache_dir=None, force: bool = False,
                recheck: bool = False) -> OracleRecord:
    _check_guardrail(dim, n, force)
    cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    path = _cache_path(cache_dir, dim, n)
    cached = _read_record(path)
    if cached is not None and not recheck:
        return cached
    records = sweep_records(dim, n, force=force)
    for rec in records:
        rec_path = _cache_path(cache_dir, dim, rec.n)
        if recheck and rec_path.exists():
            old = rec_path.read_text(encoding="ascii")
            _write_record(rec_path, rec)
            new = rec_path.read_text(encoding="ascii")
            if old != new:
                raise RuntimeError(f"cache mismatch on recompute: {rec_path}")
        else:
            _write_record(rec_path, rec)
    return records[n - 1]


def theta2_bruteforce(d: int, cache_dir=None, force: bool = False,
                      recheck: bool = False) -> OracleRecord:
    """Exact minimum 2D perimeter and maximum bonds at size d."""
    return _bruteforce(2, d, cache_dir, force, recheck)


def theta3_bruteforce(n: int, cache_dir=None, force: bool = False,
                      recheck: bool = False) -> OracleRecord:
    """Exact minimum 3D perimeter and maximum bonds at size n."""
    return _bruteforce(3, n, cache_dir, force, recheck)


def verify_connectivity_reduction(dim: int, n_max: int, box_side: int,
                                  cache_dir=None) -> bool:
    """Check that no subset of the box beats the connected optimum.

    Scans every subset of the box_side^dim box with at most n_max points
    and compares its bond count against the enumerated connected maximum
    of the same cardinality.
    """
    from math import comb

    cells = []
    if dim == 2:
        cells = [(x, y) for x in range(box_side) for y in range(box_side)]
    elif dim == 3:
        cells = [(x, y, z) for x in range(box_side) for y in range(box_side)
                 for z in range(box_side)]
    else:
        raise ValueError("dimension must be 2 or 3")
    work = sum(comb(len(cells), k) for k in range(1, n_max + 1))
    if work > 5_000_000:
        raise ValueError("infeasible parameters")

    best = {k: _bruteforce(dim, k, cache_dir).max_bonds for k in range(1, n_max + 1)}
    adj = {}
    cellset = set(cells)
    for c in cells:
        nbrs = []
        for ax in range(dim):
            for sign in (1, -1):
                q = list(c)
                q[ax] += sign
                q = tuple(q)
                if q in cellset:
                    nbrs.append(q)
        adj[c] = nbrs

    for k in range(1, n_max + 1):
        target = best[k]
        for subset in combinations(cells, k):
            chosen = set(subset)
            bonds = sum(1 for c in subset for q in adj[c] if q in chosen) // 2
            if bonds > target:
                return False
    return True
