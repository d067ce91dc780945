import pytest

from edgeiso.lattice import Config2, Config3, bond_count, is_connected
from edgeiso.oracle import (
    GuardrailError,
    enumerate_connected,
    sweep_records,
    theta2_bruteforce,
    theta3_bruteforce,
    verify_connectivity_reduction,
)
from edgeiso.planar import max_bonds2, min_perimeter2

from known_counts import FIXED_POLYCUBES, FIXED_POLYOMINOES


class TestEnumeration:
    def test_counts_2d(self):
        for n, expected in FIXED_POLYOMINOES.items():
            assert enumerate_connected(2, n) == expected, n

    def test_counts_3d(self):
        for n in range(1, 7):
            assert enumerate_connected(3, n) == FIXED_POLYCUBES[n], n

    def test_trivial_cases(self):
        assert enumerate_connected(3, 1) == 1
        assert enumerate_connected(3, 2) == 3
        assert enumerate_connected(2, 4) == 19

    def test_visitor_sees_connected_distinct(self):
        seen = set()

        def visit(cells):
            assert len(cells) == 4
            cfg = Config2(cells)
            assert is_connected(cfg)
            lo = cfg.bbox.lo
            seen.add(tuple(sorted((x - lo[0], y - lo[1]) for x, y in cells)))

        total = enumerate_connected(2, 4, visitor=visit)
        assert total == len(seen) == 19

    def test_guardrail(self):
        with pytest.raises(GuardrailError):
            enumerate_connected(3, 11)
        with pytest.raises(GuardrailError):
            enumerate_connected(2, 15)


class TestRecords:
    def test_2d_matches_closed_forms(self, cache_dir):
        for d in range(1, 13):
            rec = theta2_bruteforce(d, cache_dir=cache_dir)
            assert rec.min_perimeter == min_perimeter2(d)
            assert rec.max_bonds == max_bonds2(d)
            assert rec.min_perimeter == 4 * d - 2 * rec.max_bonds

    def test_3d_basics(self, cache_dir):
        rec1 = theta3_bruteforce(1, cache_dir=cache_dir)
        assert rec1.min_perimeter == 6
        rec8 = theta3_bruteforce(8, cache_dir=cache_dir)
        assert rec8.min_perimeter == 24 and rec8.max_bonds == 12
        assert rec8.minimizer_count == 1  # only the 2x2x2 cube

    def test_samples_attain_max(self, cache_dir):
        for n in (4, 6, 8):
            rec = theta3_bruteforce(n, cache_dir=cache_dir)
            for cfg in rec.sample_configs():
                assert bond_count(cfg) == rec.max_bonds
                assert is_connected(cfg)

    def test_cube_attains_max_for_perfect_cubes(self, cache_dir):
        for k in (1, 2):
            n = k ** 3
            rec = theta3_bruteforce(n, cache_dir=cache_dir)
            cube = Config3.from_box((0, 0, 0), (k - 1, k - 1, k - 1))
            assert bond_count(cube) == rec.max_bonds

    def test_cache_round_trip(self, tmp_path):
        rec = theta2_bruteforce(5, cache_dir=tmp_path)
        again = theta2_bruteforce(5, cache_dir=tmp_path)
        assert rec.max_bonds == again.max_bonds
        assert rec.sample_minimizers == again.sample_minimizers
        # recheck recomputes and requires byte-identical files
        third = theta2_bruteforce(5, cache_dir=tmp_path, recheck=True)
        assert third.minimizer_count == rec.minimizer_count


class TestConnectivityReduction:
    def test_2d(self, cache_dir):
        assert verify_connectivity_reduction(2, 5, 4, cache_dir=cache_dir)

    def test_3d(self, cache_dir):
        assert verify_connectivity_reduction(3, 4, 3, cache_dir=cache_dir)

    def test_trivial(self, cache_dir):
        assert verify_connectivity_reduction(2, 1, 2, cache_dir=cache_dir)

    def test_infeasible_rejected(self, cache_dir):
        with pytest.raises(ValueError, match="infeasible"):
            verify_connectivity_reduction(3, 14, 6, cache_dir=cache_dir)


def test_sweep_consistency(cache_dir):
    recs = sweep_records(2, 6)
    for rec in recs:
        assert rec.min_perimeter == 2 * 2 * rec.n - 2 * rec.max_bonds
        assert rec.minimizer_count >= 1
        assert len(rec.sample_minimizers) <= 100
