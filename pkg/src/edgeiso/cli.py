"""Command-line interface.

Subcommands: perimeter, daisy, cuboidify, fluctuation, construct-lower,
scan-2d, scan-3d, oracle, verify.  Exit codes: 0 success, 2 usage error,
3 data or parse error, 4 property violation (the offending invariant is
named on stderr).  Sweep subcommands write CSV and render a PNG figure
next to it unless --no-plot is given.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle as oc
from . import reports
from .cuboidify import (
    MalformedQuasicubeError,
    NotMinimizerError,
    cuboidify,
    merge_side_face,
)
from .lattice import (
    Config3,
    EmptyConfigError,
    NotPlanarError,
    ParseError,
    bond_count,
    dump_config,
    edge_perimeter,
    load_config,
    save_config,
)
from .lowerbound import ConstructionError, min_supported_s, shift_has_clearance
from .planar import build_daisy
from .wulff import fluctuation

EXIT_OK = 0
EXIT_DATA = 3
EXIT_PROPERTY = 4


def _cmd_perimeter(args) -> int:
    cfg = load_config(args.input)
    print(f"n {cfg.n}")
    print(f"bonds {bond_count(cfg)}")
    print(f"perimeter {edge_perimeter(cfg)}")
    return EXIT_OK


def _cmd_daisy(args) -> int:
    desc, cfg = build_daisy(args.d)
    text = dump_config(cfg)
    if args.output:
        Path(args.output).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    print(f"# daisy d={args.d} width={desc.width} height={desc.height} extra={desc.extra}",
          file=sys.stderr)
    return EXIT_OK


def _cmd_cuboidify(args) -> int:
    cfg = load_config(args.input, dim=3)
    out, desc, trace = cuboidify(cfg)
    if args.merge:
        out = merge_side_face(out)
    text = dump_config(out)
    if args.output:
        Path(args.output).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    if args.trace:
        Path(args.trace).write_text(trace.to_csv(), encoding="ascii")
    print(f"# quasicube width={desc.width} height={desc.height} levels={desc.levels} "
          f"top={desc.top_face.n} side={desc.side_face.n}", file=sys.stderr)
    return EXIT_OK


def _cmd_fluctuation(args) -> int:
    cfg = load_config(args.input)
    rep = fluctuation(cfg)
    data = rep.as_dict()
    if args.format == "json":
        print(json.dumps(data))
    else:
        fields = list(data)
        print(",".join(fields))
        print(",".join(str(data[f]) for f in fields))
    return EXIT_OK


def _cmd_construct_lower(args) -> int:
    s = args.s
    if not shift_has_clearance(s):
        print(f"error: s={s} lacks clearance; smallest supported s is "
              f"{min_supported_s(10 ** 4)}", file=sys.stderr)
        return EXIT_DATA
    report = reports.instance_report(s)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    from .lowerbound import build_instance

    inst = build_instance(s)
    save_config(inst.base, outdir / f"base_s{s}.txt")
    save_config(inst.shifted, outdir / f"shifted_s{s}.txt")
    save_config(inst.folded, outdir / f"folded_s{s}.txt")
    (outdir / f"report_s{s}.json").write_text(json.dumps(report, indent=2) + "\n",
                                              encoding="ascii")
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _cmd_scan_2d(args) -> int:
    s_values = range(args.s_min, args.s_max + 1, args.step)
    rows = reports.scan2d_rows(s_values)
    reports.write_csv(args.out, reports.SCAN2D_FIELDS, rows)
    slope = reports.fit_exponent([r["d"] for r in rows],
                                 [r["sym_diff"] for r in rows])
    print(f"rows {len(rows)}")
    print(f"fitted_exponent {slope:.6f}")
    if not args.no_plot:
        fig = reports.figure_path(args.out)
        reports.render_scan2d_figure(rows, slope, fig)
        print(f"figure {fig}")
    return EXIT_OK


def _cmd_scan_3d(args) -> int:
    s_values = range(args.s_min, args.s_max + 1, args.step)
    rows = reports.scan3d_rows(s_values)
    reports.write_csv(args.out, reports.SCAN3D_FIELDS, rows)
    print(f"rows {len(rows)}")
    if rows:
        worst = min(float(r["ratio_bound"]) for r in rows)
        print(f"min_ratio_bound {worst:.6f}")
    if not args.no_plot:
        fig = reports.figure_path(args.out)
        reports.render_scan3d_figure(rows, fig)
        print(f"figure {fig}")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    cache = args.cache_dir
    for n in range(1, args.n_max + 1):
        if args.dimension == 2:
            rec = oc.theta2_bruteforce(n, cache_dir=cache, force=args.force,
                                       recheck=args.recheck)
        else:
            rec = oc.theta3_bruteforce(n, cache_dir=cache, force=args.force,
                                       recheck=args.recheck)
        print(f"dim={rec.dimension} n={rec.n} min_perimeter={rec.min_perimeter} "
              f"max_bonds={rec.max_bonds} minimizers={rec.minimizer_count}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .verify import run_checks

    results = run_checks(quick=args.quick, cache_dir=args.cache_dir)
    failed = [r for r in results if not r[1]]
    for name, ok, detail in results:
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if detail and not ok:
            line += f": {detail}"
        print(line)
    if failed:
        print(f"error: {len(failed)} invariant(s) violated: "
              + ", ".join(name for name, _, _ in failed), file=sys.stderr)
        return EXIT_PROPERTY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgeiso",
        description="Edge-isoperimetric minimizers on the square and cubic lattices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("perimeter", help="print n, bonds and edge perimeter of a config file")
    p.add_argument("input")
    p.set_defaults(func=_cmd_perimeter)

    p = sub.add_parser("daisy", help="write the canonical d-point 2D minimizer")
    p.add_argument("d", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_daisy)

    p = sub.add_parser("cuboidify", help="rearrange a 3D minimizer into quasicube form")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--trace", help="write the rearrangement trace CSV here")
    p.add_argument("--merge", action="store_true",
                   help="also fold the side face away (box plus one top face)")
    p.set_defaults(func=_cmd_cuboidify)

    p = sub.add_parser("fluctuation", help="minimal symmetric difference to the Wulff shape")
    p.add_argument("input")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_fluctuation)

    p = sub.add_parser("construct-lower",
                       help="build the lower-bound chain for one side length")
    p.add_argument("s", type=int)
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=_cmd_construct_lower)

    p = sub.add_parser("scan-2d", help="2D sharpness sweep: CSV, exponent fit, figure")
    p.add_argument("--s-min", type=int, default=50)
    p.add_argument("--s-max", type=int, default=2000)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--out", default="scan2d.csv")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=_cmd_scan_2d)

    p = sub.add_parser("scan-3d", help="3D lower-bound sweep: CSV and figure")
    p.add_argument("--s-min", type=int, default=4)
    p.add_argument("--s-max", type=int, default=200)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--out", default="scan3d.csv")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=_cmd_scan_3d)

    p = sub.add_parser("oracle", help="exhaustive records for sizes 1..n-max")
    p.add_argument("--dimension", type=int, choices=(2, 3), required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--cache-dir", default=None,
                   help="override the cache directory (default: EDGEISO_CACHE_DIR or ~/.cache/edgeiso)")
    p.add_argument("--force", action="store_true", help="override the size guardrail")
    p.add_argument("--recheck", action="store_true",
                   help="recompute and require byte-identical cache files")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="run the property suite")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, EmptyConfigError, NotPlanarError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NotMinimizerError, MalformedQuasicubeError, ConstructionError,
            oc.GuardrailError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
