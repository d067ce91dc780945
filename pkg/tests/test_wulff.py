import itertools
import random

import pytest

from edgeiso.lattice import (
    Config2,
    Config3,
    EmptyConfigError,
    apply_axis_map,
    signed_axis_maps,
)
from edgeiso.wulff import (
    fluctuation2,
    fluctuation3,
    max_box_overlap,
    side_deviation,
    wulff2,
    wulff3,
    wulff_side,
)


class TestShapes:
    def test_wulff3_sizes(self):
        assert wulff3(1).n == 8
        assert wulff3(8).n == 27
        assert wulff3(27).n == 64

    def test_wulff2_sizes(self):
        assert wulff2(4).n == 4
        assert wulff2(5).n == 4
        assert wulff2(52).n == 49

    def test_side_contract(self):
        for n in list(range(1, 200)) + [10 ** 9, 10 ** 9 + 1]:
            ell = wulff_side(n, 3)
            assert ell ** 3 <= n < (ell + 1) ** 3

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            wulff3(0)
        with pytest.raises(ValueError):
            wulff2(0)


class TestFluctuation:
    def test_nested_cube(self):
        cube = Config3.from_box((0, 0, 0), (2, 2, 2))
        rep = fluctuation3(cube)
        assert rep.sym_diff == 64 - 27 == 37
        assert rep.baseline_gap == 37

    def test_single_point(self):
        rep = fluctuation3(Config3([(9, -9, 0)]))
        assert rep.sym_diff == 7

    def test_2d_strip(self):
        rep = fluctuation2(Config2.from_box((1, 1), (2, 10)))
        assert rep.sym_diff == 20 + 16 - 2 * 8 == 20

    def test_empty_rejected(self):
        with pytest.raises(EmptyConfigError):
            fluctuation3(Config3())

    def test_perfect_cube_nesting_formula(self):
        for ell in range(1, 9):
            cube = Config3.from_box((0, 0, 0), (ell, ell, ell))
            rep = fluctuation3(cube)
            assert rep.sym_diff == (ell + 2) ** 3 - (ell + 1) ** 3

    def test_translation_invariance(self):
        c = Config3([(0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 1, 1)])
        base = fluctuation3(c).sym_diff
        for v in [(3, 4, 5), (-7, 0, 2)]:
            assert fluctuation3(c.translate(v)).sym_diff == base

    def test_isometry_invariance(self):
        rng = random.Random(5)
        pts = {tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(9)}
        c = Config3(pts)
        base = fluctuation3(c).sym_diff
        for perm, signs in signed_axis_maps(3):
            assert fluctuation3(apply_axis_map(c, perm, signs)).sym_diff == base

    def test_report_fields(self):
        rep = fluctuation3(Config3.from_box((0, 0, 0), (2, 2, 2)))
        d = rep.as_dict()
        assert set(d) == {"n", "ax", "ay", "az", "sym_diff", "ratio", "baseline_gap"}
        assert d["sym_diff"] >= d["baseline_gap"]


class TestOverlapOracle:
    def test_matches_bruteforce(self):
        rng = random.Random(12)
        for trial in range(50):
            dim = 2 if trial % 2 else 3
            cls = Config2 if dim == 2 else Config3
            pts = {tuple(rng.randint(-4, 4) for _ in range(dim))
                   for _ in range(rng.randint(1, 12))}
            cfg = cls(pts)
            side = rng.randint(1, 5)
            best, corner = max_box_overlap(cfg, side)
            lo, hi = cfg.bbox.lo, cfg.bbox.hi
            brute_best, brute_corner = -1, None
            for cand in itertools.product(*[range(l - side, h + 2) for l, h in zip(lo, hi)]):
                ov = sum(1 for p in pts
                         if all(c <= x < c + side for c, x in zip(cand, p)))
                if ov > brute_best:
                    brute_best, brute_corner = ov, cand
            assert best == brute_best
            assert corner == brute_corner  # lexicographically smallest maximum


class TestSideDeviation:
    def test_perfect_cube_point_count(self):
        for k in range(1, 6):
            cube = Config3.from_box((0, 0, 0), (k, k, k))  # (k+1)^3 points
            assert side_deviation(cube) == 1

    def test_cube222(self):
        assert side_deviation(Config3.from_box((1, 1, 1), (2, 2, 2))) == 1

    def test_empty(self):
        with pytest.raises(EmptyConfigError):
            side_deviation(Config3())
