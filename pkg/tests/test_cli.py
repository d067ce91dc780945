import json
import subprocess
import sys

import pytest

from edgeiso.cli import main
from edgeiso.lattice import Config3, dump_config, load_config, bond_count


@pytest.fixture
def ten_point_file(tmp_path):
    pts = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    pts += [(1, 1, 2), (1, 0, 2)]
    path = tmp_path / "ten.txt"
    path.write_text(dump_config(Config3(pts)), encoding="ascii")
    return path


def run_cli(args, capsys):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


class TestBasicCommands:
    def test_perimeter(self, ten_point_file, capsys):
        code, out, _ = run_cli(["perimeter", ten_point_file], capsys)
        assert code == 0
        assert "n 10" in out and "bonds 15" in out and "perimeter 30" in out

    def test_daisy_write(self, tmp_path, capsys):
        out_file = tmp_path / "d7.txt"
        code, _, _ = run_cli(["daisy", "7", "-o", out_file], capsys)
        assert code == 0
        cfg = load_config(out_file)
        assert cfg.n == 7

    def test_cuboidify_with_trace(self, ten_point_file, tmp_path, capsys):
        out_file = tmp_path / "quasi.txt"
        trace_file = tmp_path / "trace.csv"
        code, _, _ = run_cli(
            ["cuboidify", ten_point_file, "-o", out_file, "--trace", trace_file], capsys
        )
        assert code == 0
        cfg = load_config(out_file, dim=3)
        assert cfg.n == 10 and bond_count(cfg) == 15
        lines = trace_file.read_text().strip().split("\n")
        assert lines[0] == "step_label,moved_points,bonds"
        bond_col = {line.split(",")[2] for line in lines[1:]}
        assert bond_col == {"15"}

    def test_fluctuation_cube27(self, tmp_path, capsys):
        path = tmp_path / "cube.txt"
        path.write_text(dump_config(Config3.from_box((0, 0, 0), (2, 2, 2))))
        code, out, _ = run_cli(["fluctuation", path, "--format", "json"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["sym_diff"] == 37
        code, out, _ = run_cli(["fluctuation", path], capsys)
        header, row = out.strip().split("\n")
        assert header.split(",")[:5] == ["n", "ax", "ay", "az", "sym_diff"]
        assert row.split(",")[4] == "37"

    def test_construct_lower(self, tmp_path, capsys):
        code, out, _ = run_cli(["construct-lower", "5", "--outdir", tmp_path], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["bonds_conserved"] is True
        assert report["wulff_side"] == 5
        for name in ("base_s5.txt", "shifted_s5.txt", "folded_s5.txt", "report_s5.json"):
            assert (tmp_path / name).exists()
        folded = load_config(tmp_path / "folded_s5.txt", dim=3)
        assert folded.n == report["n"]

    def test_oracle_command(self, tmp_path, capsys):
        code, out, _ = run_cli(
            ["oracle", "--dimension", "2", "--n-max", "4", "--cache-dir", tmp_path], capsys
        )
        assert code == 0
        assert "n=4 min_perimeter=8 max_bonds=4" in out


class TestScans:
    def test_scan_2d_outputs(self, tmp_path, capsys):
        csv_path = tmp_path / "s2.csv"
        code, out, _ = run_cli(
            ["scan-2d", "--s-min", "50", "--s-max", "80", "--out", csv_path], capsys
        )
        assert code == 0
        lines = csv_path.read_text().split("\n")
        assert lines[0] == "s,d,sym_diff,baseline_gap,lower_bound_2x,ratio"
        assert len([l for l in lines if l]) == 32
        assert "fitted_exponent" in out
        assert (tmp_path / "s2.png").exists()  # figure rendered next to the CSV

    def test_scan_2d_no_plot(self, tmp_path, capsys):
        csv_path = tmp_path / "s2b.csv"
        code, _, _ = run_cli(
            ["scan-2d", "--s-min", "50", "--s-max", "55", "--out", csv_path, "--no-plot"],
            capsys,
        )
        assert code == 0
        assert not (tmp_path / "s2b.png").exists()

    def test_scan_3d_outputs(self, tmp_path, capsys):
        csv_path = tmp_path / "s3.csv"
        code, out, _ = run_cli(
            ["scan-3d", "--s-min", "4", "--s-max", "12", "--out", csv_path], capsys
        )
        assert code == 0
        lines = csv_path.read_text().split("\n")
        assert lines[0] == ("s,n,d,h1,bound_value,sym_diff,baseline_gap,"
                            "ratio_bound,ratio_measured,bonds_conserved")
        rows = [l for l in lines[1:] if l]
        assert len(rows) == 9
        assert all(r.split(",")[-1] == "1" for r in rows)
        assert (tmp_path / "s3.png").exists()

    def test_scan_determinism(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_cli(["scan-2d", "--s-min", "60", "--s-max", "70", "--out", a, "--no-plot"], capsys)
        run_cli(["scan-2d", "--s-min", "60", "--s-max", "70", "--out", b, "--no-plot"], capsys)
        assert a.read_bytes() == b.read_bytes()


class TestExitCodes:
    def test_usage_error_is_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == 2

    def test_parse_error_is_3(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("1 2 3\n1 2 3\n")
        code, _, err = run_cli(["perimeter", bad], capsys)
        assert code == 3
        assert "line 2" in err

    def test_property_violation_is_4(self, tmp_path, capsys):
        line = tmp_path / "line.txt"
        line.write_text("\n".join(f"0 0 {z}" for z in range(7)) + "\n")
        code, _, err = run_cli(["cuboidify", line], capsys)
        assert code == 4
        assert "not an EIP minimizer" in err

    def test_missing_file_is_3(self, tmp_path, capsys):
        code, _, _ = run_cli(["perimeter", tmp_path / "nope.txt"], capsys)
        assert code == 3


class TestVerifyCommand:
    def test_quick_passes(self, cache_dir, capsys):
        code, out, _ = run_cli(["verify", "--quick", "--cache-dir", cache_dir], capsys)
        assert code == 0
        lines = [l for l in out.strip().split("\n") if l]
        assert all(l.startswith("PASS") for l in lines)
        assert len(lines) >= 15


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "edgeiso.cli", "daisy", "4"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert len(proc.stdout.strip().split("\n")) == 4
