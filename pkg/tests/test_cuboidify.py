import numpy as np
import pytest

from edgeiso.cuboidify import (
    MalformedQuasicubeError,
    NotMinimizerError,
    cuboidify,
    is_box_plus_face,
    merge_side_face,
    validate_quasicube,
)
from edgeiso.lattice import Config3, EmptyConfigError, bond_count, level
from edgeiso.oracle import theta3_bruteforce
from edgeiso.planar import build_daisy


def daisy_prism(d, levels):
    _, daisy = build_daisy(d)
    return Config3([(x, y, z) for x, y in daisy.points() for z in range(1, levels + 1)])


class TestCuboidify:
    def test_cube_unchanged(self):
        cube = Config3.from_box((5, 5, 5), (6, 6, 6))
        out, desc, trace = cuboidify(cube)
        assert out == Config3.from_box((1, 1, 1), (2, 2, 2))
        assert trace.bonds_constant()
        assert (desc.width, desc.height, desc.levels) == (2, 2, 2)

    def test_seven_point_minimizer(self):
        cube = Config3.from_box((0, 0, 0), (1, 1, 1))
        seven = cube.difference(Config3([(1, 1, 1)]))
        out, desc, trace = cuboidify(seven)
        assert out.n == 7
        assert bond_count(out) == bond_count(seven) == 9
        sizes = [level(out, 3, z).n for z in (1, 2)]
        assert sizes == [4, 3]

    def test_cube27_plus_one(self):
        cfg = Config3.from_box((1, 1, 1), (3, 3, 3)).union(Config3([(1, 1, 4)]))
        out, desc, trace = cuboidify(cfg)
        assert bond_count(out) == bond_count(cfg) == 55
        assert out.n == 28
        assert desc.top_face.n == 1 or desc.side_face.n == 1
        validate_quasicube(out, desc)

    def test_empty_rejected(self):
        with pytest.raises(EmptyConfigError):
            cuboidify(Config3())

    def test_line_rejected(self):
        line = Config3([(0, 0, z) for z in range(7)])
        with pytest.raises(NotMinimizerError):
            cuboidify(line)

    def test_idempotent_on_normal_forms(self):
        for builder in (
            lambda: daisy_prism(5, 2),
            lambda: Config3.from_box((0, 0, 0), (1, 1, 1)),
            lambda: Config3.from_box((1, 1, 1), (3, 3, 3)).union(Config3([(1, 1, 4)])),
        ):
            once, _, _ = cuboidify(builder())
            twice, _, _ = cuboidify(once)
            assert once == twice

    def test_level_monotonicity_and_trace(self):
        rec = theta3_bruteforce(9)
        for cfg in rec.sample_configs()[:10]:
            out, desc, trace = cuboidify(cfg)
            sizes = [level(out, 3, z).n for z in range(1, desc.levels + 1)]
            assert all(a >= b for a, b in zip(sizes, sizes[1:]))
            assert trace.bonds_constant()
            assert trace.steps[0].label == "input"

    def test_oracle_minimizers_all_sizes(self, cache_dir):
        for n in range(1, 11):
            rec = theta3_bruteforce(n, cache_dir=cache_dir)
            for cfg in rec.sample_configs():
                out, desc, trace = cuboidify(cfg)
                assert out.n == n
                assert bond_count(out) == rec.max_bonds
                validate_quasicube(out, desc)

    def test_trace_csv(self):
        _, _, trace = cuboidify(daisy_prism(5, 2))
        text = trace.to_csv()
        lines = text.strip().split("\n")
        assert lines[0] == "step_label,moved_points,bonds"
        assert all(len(line.split(",")) == 3 for line in lines[1:])


class TestMergeSideFace:
    def test_no_side_face_is_noop(self):
        g = np.zeros((3, 3, 3), dtype=bool)
        g[:3, :3, :2] = True
        g[:2, :3, 2] = True
        cfg, desc, _ = cuboidify(Config3.from_grid(g, (1, 1, 1)))
        assert desc.side_face.is_empty
        assert merge_side_face(cfg) == cfg

    def test_prism5_overlap_then_stack(self):
        cfg, desc, _ = cuboidify(daisy_prism(5, 2))
        assert not desc.side_face.is_empty
        merged = merge_side_face(cfg)
        assert merged.n == 10
        assert bond_count(merged) == 15
        assert is_box_plus_face(merged)

    def test_prism7_three_levels(self):
        prism = daisy_prism(7, 3)
        b = bond_count(prism)
        cfg, _, _ = cuboidify(prism)
        merged = merge_side_face(cfg)
        assert merged.n == 21 and bond_count(merged) == b
        assert is_box_plus_face(merged)

    def test_grow_wall_case(self):
        # wide wall, narrow top: exercises the row-then-column transformations
        g = np.zeros((5, 5, 3), dtype=bool)
        g[:4, :5, 0] = True
        g[4, :4, 0] = True
        g[:4, :5, 1] = True
        g[:3, :4, 2] = True
        fix = Config3.from_grid(g, (1, 1, 1))
        b = bond_count(fix)
        out = merge_side_face(fix)
        assert out.n == fix.n == 56
        assert bond_count(out) == b
        assert is_box_plus_face(out)
        # result is the widened box plus a 6-cell face
        assert out.bbox.hi == (5, 5, 3)
        assert level(out, 3, 3).n == 6

    def test_tall_wall_aborts_when_not_conserving(self):
        g = np.zeros((4, 3, 5), dtype=bool)
        g[:3, :3, :4] = True
        g[3, 0, :3] = True
        g[:2, :3, 4] = True
        with pytest.raises(NotMinimizerError):
            merge_side_face(Config3.from_grid(g, (1, 1, 1)))

    def test_oracle_samples_merge(self, cache_dir):
        for n in range(2, 10):
            rec = theta3_bruteforce(n, cache_dir=cache_dir)
            for cfg in rec.sample_configs()[:25]:
                quasi, _, _ = cuboidify(cfg)
                merged = merge_side_face(quasi)
                assert merged.n == n
                assert bond_count(merged) == rec.max_bonds
                assert is_box_plus_face(merged)

    def test_malformed_rejected(self):
        holey = Config3.from_box((1, 1, 1), (3, 3, 3)).difference(Config3([(2, 2, 1)]))
        with pytest.raises(MalformedQuasicubeError):
            merge_side_face(holey)


class TestDescriptor:
    def test_validate_catches_mismatch(self):
        cfg, desc, _ = cuboidify(daisy_prism(5, 2))
        with pytest.raises(MalformedQuasicubeError):
            validate_quasicube(cfg.union(Config3([(9, 9, 9)])), desc)

    def test_base_block(self):
        cfg, desc, _ = cuboidify(Config3.from_box((0, 0, 0), (2, 2, 2)))
        base = desc.base_block()
        assert base.n == desc.width * desc.height * (desc.levels - 1)
