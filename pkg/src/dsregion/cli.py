"""Command-line driver: census export, scans, refinement, classification,
hull-spectrum runs, and region outlines.

Exit codes: 0 success / clean scan, 2 usage or configuration error,
3 scan found counterexamples, 4 refine found no crossing.  Scripts can
branch on the code without parsing output.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import permgroup, region, search
from .permgroup import (
    PairCensus,
    Permutation,
    all_cycle_types,
    census_records,
    classify_pair,
    format_cycles,
    inequivalent_pairs,
    parse_cycles,
)
from .region import RegionPM, outline_vertices
from .search import (
    CheckpointMismatchError,
    NoCrossingError,
    hull_spectrum_scan,
    refine_crossing,
    reports_document,
    scan_census,
    scan_tuples,
)
from .spectra import ScanConfig

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_NO_CROSSING = 4

FLOAT_FMT = "%.17g"


def _fmt(x: float) -> str:
    return FLOAT_FMT % x


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="degree of the permutations")
    p.add_argument("--out", type=str, default=None, help="output file path")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="dsregion",
        description="Compute portions of the doubly stochastic eigenvalue region",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pairs", help="enumerate the pair-class census")
    _add_common(p)
    p.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    p.add_argument(
        "--allow-long",
        action="store_true",
        help="lift the n <= 10 cap (censuses beyond it run for a long time)",
    )
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("scan", help="scan pair classes or k-tuples for exterior eigenvalues")
    _add_common(p)
    p.add_argument("--mesh", type=int, required=True)
    p.add_argument("--tuple-order", type=int, default=2)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--report", type=str, default=None, help="write the JSON report here")
    p.add_argument("--checkpoint", type=str, default=None)
    p.add_argument("--sampling", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("refine", help="refine the exterior interval of a pair's eigenpath")
    _add_common(p)
    p.add_argument("sigma", type=str, help='first permutation, e.g. "(145)(23)"')
    p.add_argument("tau", type=str, help='second permutation, e.g. "(1425)"')
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("classify", help="locate a pair's class in the census")
    _add_common(p)
    p.add_argument("sigma", type=str)
    p.add_argument("tau", type=str)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("hull", help="hull-spectrum scan for a subgroup")
    _add_common(p)
    p.add_argument("--group", choices=["symmetric", "alternating"], required=True)
    p.add_argument("--tuple-order", type=int, default=3)
    p.add_argument("--mesh", type=int, required=True)
    p.add_argument("--pair-mesh", type=int, default=None)
    p.add_argument("--sampling", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--report", type=str, default=None)
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("outline", help="export the PM_n polygon outlines")
    _add_common(p)
    p.set_defaults(func=cmd_outline)

    return top


def _partition_count(n: int) -> int:
    return len(all_cycle_types(n))


def cmd_pairs(args: argparse.Namespace) -> int:
    if args.n < 2 or (args.n > 10 and not args.allow_long):
        print(
            f"pairs: n={args.n} outside 2..10 (use --allow-long to lift the cap)",
            file=sys.stderr,
        )
        return EXIT_USAGE
    census = inequivalent_pairs(args.n)
    naive = _partition_count(args.n) * math.factorial(args.n)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            if args.format == "jsonl":
                for rec in census_records(census):
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
            else:
                fh.write("n,classIndex,sigma,tauOneLine,typeSigma,typeTau\n")
                for rec in census_records(census):
                    fh.write(
                        "%d,%d,%s,%s,%s,%s\n"
                        % (
                            rec["n"],
                            rec["classIndex"],
                            " ".join(map(str, rec["sigma"])),
                            " ".join(map(str, rec["tau"])),
                            " ".join(map(str, rec["typeSigma"])),
                            " ".join(map(str, rec["typeTau"])),
                        )
                    )
    print(f"inequivalent pairs: {census.count_total}")
    print(f"canonical-form pairs p(n)*n!: {naive}")
    return EXIT_OK


def _parse_pair(args: argparse.Namespace) -> tuple[Permutation, Permutation]:
    return parse_cycles(args.sigma, args.n), parse_cycles(args.tau, args.n)


def cmd_scan(args: argparse.Namespace) -> int:
    cloud_fh = None
    cloud_sink = None
    try:
        if args.tuple_order == 2:
            census = inequivalent_pairs(args.n)
            if args.out:
                cloud_fh = open(args.out, "w", encoding="utf-8")
                cloud_fh.write("classIndex,t,re,im\n")

                def cloud_sink(arr: np.ndarray) -> None:
                    for row in arr:
                        cloud_fh.write(
                            "%d,%s,%s,%s\n"
                            % (int(row[0]), _fmt(row[1]), _fmt(row[2]), _fmt(row[3]))
                        )

            reports = scan_census(
                census,
                ScanConfig(mesh_size=args.mesh),
                workers=args.workers,
                checkpoint_path=args.checkpoint,
                cloud_sink=cloud_sink,
            )
        else:
            reports = scan_tuples(
                args.n,
                args.tuple_order,
                args.mesh,
                sampling=args.sampling,
                samples=args.samples,
                seed=args.seed,
                workers=args.workers,
                checkpoint_path=args.checkpoint,
            )
    except CheckpointMismatchError as exc:
        print(f"scan: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"scan: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if cloud_fh is not None:
            cloud_fh.close()
    doc = reports_document(
        reports, n=args.n, mesh=args.mesh, tuple_order=args.tuple_order
    )
    if args.report:
        search.dump_reports(args.report, doc)
    if reports:
        print(f"counterexamples found: {len(reports)} class(es) with exterior points")
        for r in reports[:10]:
            print(
                f"  class {r.class_index}: maxViolation {_fmt(r.max_violation)}"
                f" at weights {[_fmt(w) for w in r.witness.weights]}"
            )
        return EXIT_COUNTEREXAMPLE
    print("clean scan: no exterior eigenvalues")
    return EXIT_OK


def cmd_refine(args: argparse.Namespace) -> int:
    try:
        sigma, tau = _parse_pair(args)
    except ValueError as exc:
        print(f"refine: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        interval = refine_crossing(sigma, tau, tol=args.tol)
    except NoCrossingError as exc:
        print(f"no crossing: {exc}")
        return EXIT_NO_CROSSING
    print(f"{interval.t_low:.7f} {interval.t_high:.7f}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(
                {
                    "n": args.n,
                    "sigma": args.sigma,
                    "tau": args.tau,
                    "tLow": interval.t_low,
                    "tHigh": interval.t_high,
                    "tolerance": interval.tolerance,
                },
                fh,
                indent=2,
                sort_keys=True,
            )
            fh.write("\n")
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    try:
        sigma, tau = _parse_pair(args)
    except ValueError as exc:
        print(f"classify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    census = inequivalent_pairs(args.n)
    idx = classify_pair(sigma, tau, census)
    cls = census.classes[idx]
    print(
        f"class {idx}: sigma {format_cycles(cls.sigma)} tau {format_cycles(cls.tau)}"
    )
    return EXIT_OK


def cmd_hull(args: argparse.Namespace) -> int:
    try:
        result = hull_spectrum_scan(
            args.group,
            args.n,
            args.tuple_order,
            args.mesh,
            pair_mesh_size=args.pair_mesh,
            sampling=args.sampling,
            samples=args.samples,
            seed=args.seed,
        )
    except ValueError as exc:
        print(f"hull: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("kind,re,im\n")
            for z in result.pair_points:
                fh.write("pair,%s,%s\n" % (_fmt(z.real), _fmt(z.imag)))
            for z in result.tuple_points:
                fh.write("tuple,%s,%s\n" % (_fmt(z.real), _fmt(z.imag)))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(
                {
                    "group": result.group,
                    "n": result.n,
                    "tupleOrder": result.tuple_order,
                    "mesh": result.mesh,
                    "exteriorCount": len(result.exterior),
                    "exterior": [
                        {
                            "perms": [list(p) for p in e.perms],
                            "weights": list(e.weights),
                            "re": e.value.real,
                            "im": e.value.imag,
                            "hullDistance": e.hull_distance,
                        }
                        for e in result.exterior[:1000]
                    ],
                },
                fh,
                indent=2,
                sort_keys=True,
            )
            fh.write("\n")
    print(
        f"{result.group} n={result.n} k={result.tuple_order}: "
        f"{len(result.exterior)} tuple eigenvalue(s) outside the pair hull"
    )
    if result.tuple_order > 2:
        print(
            f"largest nearest-pair gap: {_fmt(result.max_pair_gap)}"
            f" at {_fmt(result.gap_witness.real)}+{_fmt(result.gap_witness.imag)}i"
        )
    return EXIT_OK


def cmd_outline(args: argparse.Namespace) -> int:
    if args.n < 2:
        print("outline: n must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    reg = RegionPM(args.n)
    lines = ["k,j,x,y"]
    for k, j, x, y in outline_vertices(reg):
        lines.append("%d,%d,%s,%s" % (k, j, _fmt(x), _fmt(y)))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
