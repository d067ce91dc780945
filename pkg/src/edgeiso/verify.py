"""Property-suite runner backing the ``verify`` CLI subcommand.

Each check exercises one invariant family and returns silently or raises
AssertionError with a description.  ``run_checks`` collects the outcomes
so the CLI can print one line per check and exit nonzero on any failure.
Quick mode trims ranges to keep the suite under a few seconds; full mode
runs the documented horizons.
"""
from __future__ import annotations

import random
from math import isqrt

from . import lowerbound as lb
from . import oracle as oc
from . import planar as pl
from .cuboidify import cuboidify, validate_quasicube
from .intmath import ceil_2sqrt, icbrt, iroot
from .lattice import (
    Config2,
    Config3,
    apply_axis_map,
    bond_count,
    edge_perimeter,
    minimal_cuboid,
    signed_axis_maps,
    sym_diff_size,
    three_vacancies,
)
from .wulff import fluctuation2, fluctuation3, max_box_overlap, wulff_side


def _random_config(rng, dim, max_pts=14, span=4):
    cls = Config2 if dim == 2 else Config3
    pts = {tuple(rng.randint(-span, span) for _ in range(dim))
           for _ in range(rng.randint(1, max_pts))}
    return cls(pts)


def check_perimeter_relation(quick):
    rng = random.Random(11)
    for trial in range(60 if quick else 300):
        dim = 2 if trial % 2 else 3
        c = _random_config(rng, dim)
        assert edge_perimeter(c) + 2 * bond_count(c) == 2 * dim * c.n, c


def check_isometry_invariance(quick):
    rng = random.Random(13)
    for dim in (2, 3):
        c = _random_config(rng, dim, max_pts=10)
        b, p = bond_count(c), edge_perimeter(c)
        for perm, signs in signed_axis_maps(dim):
            img = apply_axis_map(c, perm, signs)
            assert bond_count(img) == b and edge_perimeter(img) == p
        moved = c.translate(tuple(rng.randint(-9, 9) for _ in range(dim)))
        assert bond_count(moved) == b and edge_perimeter(moved) == p


def check_symdiff_identity(quick):
    rng = random.Random(17)
    for _ in range(40 if quick else 200):
        a = _random_config(rng, 3, max_pts=10)
        b = _random_config(rng, 3, max_pts=10)
        expected = a.n + b.n - 2 * a.intersection(b).n
        assert sym_diff_size(a, b) == expected == sym_diff_size(b, a)


def check_three_vacancies(quick):
    rng = random.Random(19)
    for _ in range(30 if quick else 150):
        c = _random_config(rng, 3, max_pts=12, span=3)
        vacs = three_vacancies(c)
        assert not (vacs & c.points())
        b = bond_count(c)
        for v in vacs:
            assert bond_count(c.union(Config3([v]))) == b + 3, v


def check_minimal_cuboid_tight(quick):
    rng = random.Random(23)
    for _ in range(30 if quick else 100):
        c = _random_config(rng, 3)
        box = minimal_cuboid(c)
        pts = c.points_array()
        for ax in range(3):
            assert (pts[:, ax] == box.lo[ax]).any() and (pts[:, ax] == box.hi[ax]).any()


def check_closed_forms_vs_oracle2(quick, cache_dir=None):
    top = 8 if quick else 12
    for d in range(1, top + 1):
        rec = oc.theta2_bruteforce(d, cache_dir=cache_dir)
        assert rec.min_perimeter == pl.min_perimeter2(d), d
        assert rec.max_bonds == pl.max_bonds2(d), d


def check_daisy_minimality(quick):
    top = 2000 if quick else 10 ** 4
    for d in range(1, top + 1):
        _, cfg = pl.build_daisy(d)
        assert bond_count(cfg) == pl.max_bonds2(d), d


def check_rect_line_criterion(quick):
    top = 15 if quick else 40
    for s in range(2, top + 1):
        for p in range(0, s - 1):
            for q in range(0, s):
                cfg = pl.build_rect_line(s, p, q)
                direct = bond_count(cfg)
                assert direct == pl.rect_line_bonds(s, p, q), (s, p, q)
                assert pl.rect_line_is_minimizer(s, p, q) == (
                    direct == pl.max_bonds2(cfg.n)
                ), (s, p, q)


def check_bigint_formulas(quick):
    rng = random.Random(29)
    samples = [1, 2, 3, 4, 5, 2 ** 60, 2 ** 60 - 1, (2 ** 30) ** 2, (2 ** 30) ** 2 + 1]
    samples += [rng.randrange(1, 2 ** 60) for _ in range(200)]
    for d in samples:
        t = pl.min_perimeter2(d) // 2
        assert t * t >= 4 * d > (t - 1) * (t - 1), d
        assert pl.max_bonds2(d) == 2 * d - ceil_2sqrt(d)
    for n in [1, 7, 8, 26, 27, 3 ** 30, 3 ** 30 + 1]:
        ell = icbrt(n)
        assert ell ** 3 <= n < (ell + 1) ** 3
    for k in (2, 3, 5, 12):
        for base in (2, 3, 10, 1000):
            for off in (-1, 0, 1):
                v = base ** k + off
                if v >= 0:
                    r = iroot(v, k)
                    assert r ** k <= v < (r + 1) ** k


def check_oracle3_cuboidify(quick, cache_dir=None):
    from .cuboidify import is_box_plus_face, merge_side_face
    from .lattice import level

    top = 6 if quick else 9
    for n in range(1, top + 1):
        rec = oc.theta3_bruteforce(n, cache_dir=cache_dir)
        assert rec.min_perimeter == 6 * n - 2 * rec.max_bonds
        for cfg in rec.sample_configs():
            assert edge_perimeter(cfg) == rec.min_perimeter
            out, desc, trace = cuboidify(cfg)
            assert trace.bonds_constant()
            assert out.n == n and bond_count(out) == rec.max_bonds
            validate_quasicube(out, desc)
            sizes = [level(out, 3, z).n for z in range(1, desc.levels + 1)]
            assert all(a >= b for a, b in zip(sizes, sizes[1:]))
            again, _, _ = cuboidify(out)
            assert again == out  # idempotent on normal forms
            merged = merge_side_face(out)
            assert bond_count(merged) == rec.max_bonds and is_box_plus_face(merged)


def check_connectivity_reduction(quick, cache_dir=None):
    assert oc.verify_connectivity_reduction(2, 4 if quick else 5, 4, cache_dir=cache_dir)
    assert oc.verify_connectivity_reduction(3, 3 if quick else 4, 3, cache_dir=cache_dir)


def check_overlap_bruteforce(quick):
    import itertools

    rng = random.Random(31)
    for trial in range(20 if quick else 60):
        dim = 2 if trial % 2 else 3
        c = _random_config(rng, dim, max_pts=10, span=3)
        side = rng.randint(1, 4)
        best, corner = max_box_overlap(c, side)
        lo, hi = c.bbox.lo, c.bbox.hi
        brute = max(
            sum(1 for p in c.points() if all(u <= x < u + side for u, x in zip(cand, p)))
            for cand in itertools.product(*[range(l - side, h + 2) for l, h in zip(lo, hi)])
        )
        assert best == brute


def check_wulff_nesting(quick):
    for ell in range(1, 7 if quick else 12):
        n = (ell + 1) ** 3
        cube = Config3.from_box((0, 0, 0), (ell, ell, ell))
        rep = fluctuation3(cube)
        assert wulff_side(n, 3) == ell + 1
        assert rep.sym_diff == (ell + 2) ** 3 - (ell + 1) ** 3, ell


def check_fluctuation_invariance(quick):
    rng = random.Random(37)
    c = _random_config(rng, 3, max_pts=9, span=2)
    base = fluctuation3(c).sym_diff
    maps = list(signed_axis_maps(3))
    if quick:
        maps = maps[::6]
    for perm, signs in maps:
        assert fluctuation3(apply_axis_map(c, perm, signs)).sym_diff == base
    assert fluctuation3(c.translate((7, -3, 11))).sym_diff == base


def check_lowerbound_chain(quick):
    svals = (4, 9) if quick else (4, 6, 9, 12, 16, 25, 81)
    for s in svals:
        inst = lb.build_instance(s)
        b = bond_count(inst.base)
        assert bond_count(inst.shifted) == b == bond_count(inst.folded)
        assert inst.base.n == inst.shifted.n == inst.folded.n == inst.n
        block = Config3.from_box((-inst.h1, 1, 1), (s, s, s - inst.h1 - 1))
        assert block.intersection(inst.folded).n == block.n
        rep = fluctuation3(inst.folded)
        assert rep.sym_diff >= inst.bound_value


def check_sharpness_2d(quick):
    svals = (9, 30, 77) if quick else (9, 30, 77, 150, 400)
    for s in svals:
        rep, _ = lb.sharp_ratio_2d(s)
        assert 2 * rep.sym_diff >= lb.sharp_bound_2d(s), s


def check_wulff_side_claim(quick):
    top = 1000 if quick else 10 ** 4
    for s in range(2, top + 1):
        assert icbrt(lb.sharp_n(s)) == s, s


def check_face_formula(quick):
    for s in range(2, 200 if quick else 500):
        d = pl.sharp_d(s)
        r = s - isqrt(s) - 1
        q = s // 4
        if s >= 4:
            assert d == r * s + (s - q), s
        assert d == s * s - s * isqrt(s) - q, s


ALL_CHECKS = [
    ("perimeter-relation", check_perimeter_relation),
    ("isometry-invariance", check_isometry_invariance),
    ("symdiff-identity", check_symdiff_identity),
    ("three-vacancies", check_three_vacancies),
    ("minimal-cuboid-tight", check_minimal_cuboid_tight),
    ("closed-forms-vs-oracle2", check_closed_forms_vs_oracle2),
    ("daisy-minimality", check_daisy_minimality),
    ("rect-line-criterion", check_rect_line_criterion),
    ("bigint-formulas", check_bigint_formulas),
    ("oracle3-cuboidify", check_oracle3_cuboidify),
    ("connectivity-reduction", check_connectivity_reduction),
    ("overlap-bruteforce", check_overlap_bruteforce),
    ("wulff-nesting", check_wulff_nesting),
    ("fluctuation-invariance", check_fluctuation_invariance),
    ("lowerbound-chain", check_lowerbound_chain),
    ("sharpness-2d", check_sharpness_2d),
    ("wulff-side-claim", check_wulff_side_claim),
    ("face-formula", check_face_formula),
]

_NEEDS_CACHE = {"closed-forms-vs-oracle2", "oracle3-cuboidify", "connectivity-reduction"}


def run_checks(quick: bool = False, cache_dir=None):
    """Run all checks; returns a list of (name, passed, detail)."""
    results = []
    for name, fn in ALL_CHECKS:
        try:
            if name in _NEEDS_CACHE:
                fn(quick, cache_dir=cache_dir)
            else:
                fn(quick)
            results.append((name, True, ""))
        except AssertionError as exc:
            results.append((name, False, str(exc)))
    return results
