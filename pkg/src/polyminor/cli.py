"""Command-line front end for the verification toolkit.

Exit codes: 0 when every assertion held, 1 when counterexamples were
found, 2 for usage or format errors.
"""

from __future__ import annotations

import argparse
import sys

from .catalog import FamilySpec, family_member
from .generation import enumerate_polyhedra
from .graphs import GraphFormatError, to_graph6
from .pipelines import (
    check_family_theorem,
    check_theorem1,
    compute_record,
    count_family_forty,
    cross_check_known,
    edge_minimality_report,
    tally_k26free,
)
from .records import PropertyRecord, cert_verify_record, write_report

EXIT_OK = 0
EXIT_COUNTEREXAMPLES = 1
EXIT_USAGE = 2


def _read_lines(source: str):
    if source == "-":
        return [ln.strip() for ln in sys.stdin if ln.strip()]
    with open(source, encoding="utf-8") as fh:
        return [ln.strip() for ln in fh if ln.strip()]


def _emit_report(report, records, args) -> None:
    if getattr(args, "format", "json") == "csv":
        text = report.totals_csv()
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        if args.output:
            write_report(report, records, args.output)
        else:
            for rec in records:
                print(rec.to_json())
            print(report.summary_json())
    status = "held" if report.ok else f"FAILED ({len(report.counterexamples)} counterexamples)"
    print(
        f"[{report.campaign}] n={report.n_range[0]}..{report.n_range[1]} "
        f"{status} in {report.elapsed:.1f}s",
        file=sys.stderr,
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="polyminor",
        description="Verification toolkit for non-hamiltonian polyhedra and "
        "their Herschel-family structure.",
    )
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    parser.add_argument("--cache", default=None, help="results cache directory")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--output", default=None, help="report file (default stdout)")
    parser.add_argument(
        "--resume",
        action="store_true",
        help="resume from the cache/checkpoint instead of recomputing",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("props", help="property records for graph6 lines")
    p.add_argument("source", nargs="?", default="-", help="file of graph6 lines or -")

    p = sub.add_parser("gen", help="enumerate polyhedral graphs as graph6 lines")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--checkpoint", default=None, help="frontier checkpoint file")

    p = sub.add_parser("family", help="emit one Herschel-family member")
    p.add_argument("spec", help="kind:n:mask, e.g. bullet:16:31")

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument(
        "target",
        choices=("theorem1", "family", "forty", "cross", "edge-minimal"),
    )
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("tally", help="count classes per order")
    p.add_argument("what", choices=("k26free",))
    p.add_argument("--max", type=int, required=True, dest="n_max")

    p = sub.add_parser("cert", help="re-verify stored certificates")
    p.add_argument("action", choices=("verify",))
    p.add_argument("source", nargs="?", default="-", help="record JSONL file or -")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0

    try:
        return _dispatch(args)
    except GraphFormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    if args.command == "props":
        lines = _read_lines(args.source)
        out = sys.stdout
        if args.output:
            out = open(args.output, "w", encoding="utf-8")
        try:
            for line in lines:
                out.write(compute_record(line).to_json() + "\n")
        finally:
            if out is not sys.stdout:
                out.close()
        return EXIT_OK

    if args.command == "gen":
        out = sys.stdout
        if args.output:
            out = open(args.output, "a" if args.resume else "w", encoding="utf-8")
        try:
            count = enumerate_polyhedra(
                args.n,
                sink=lambda g: out.write(to_graph6(g) + "\n"),
                jobs=args.jobs,
                checkpoint=args.checkpoint,
                resume=args.resume,
            )
        finally:
            if out is not sys.stdout:
                out.close()
        print(f"classes: {count}", file=sys.stderr)
        return EXIT_OK

    if args.command == "family":
        spec = FamilySpec.parse(args.spec)
        print(to_graph6(family_member(spec)))
        return EXIT_OK

    if args.command == "verify":
        if args.target == "theorem1":
            report, records = check_theorem1(args.n, args.cache, args.jobs)
        elif args.target == "cross":
            report, records = cross_check_known(args.n, args.cache, args.jobs)
        elif args.target == "family":
            report, records = check_family_theorem(args.n, args.cache, args.jobs)
        elif args.target == "forty":
            count, classes = count_family_forty(args.n)
            ok = count == 40
            print(f"n={args.n}: {count} classes from the 64-candidate pool")
            for g6 in classes:
                print(g6)
            if not ok:
                print("expected exactly 40", file=sys.stderr)
            return EXIT_OK if ok else EXIT_COUNTEREXAMPLES
        else:  # edge-minimal
            report, checked = edge_minimality_report(args.n)
            _emit_report(report, [], args)
            return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLES
        _emit_report(report, records, args)
        return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLES

    if args.command == "tally":
        report, per_n = tally_k26free(args.n_max, args.cache, args.jobs)
        cumulative = 0
        for n in sorted(per_n):
            cumulative += per_n[n]
            print(f"n={n}: {per_n[n]} (cumulative {cumulative})")
        if args.n_max == 14:
            print(f"cumulative through 14: {cumulative} (paper: 206)")
        _emit_report(report, [], args)
        return EXIT_OK

    if args.command == "cert":
        lines = _read_lines(args.source)
        bad = 0
        for i, line in enumerate(lines):
            if line.startswith("{") and '"_' in line.split(",", 1)[0]:
                continue  # cache header/footer lines
            try:
                rec = PropertyRecord.from_json(line)
            except (ValueError, KeyError):
                print(f"line {i + 1}: unparseable record", file=sys.stderr)
                bad += 1
                continue
            if not cert_verify_record(rec):
                print(f"line {i + 1}: certificate check FAILED", file=sys.stderr)
                bad += 1
        print(f"checked {len(lines)} lines, {bad} failures", file=sys.stderr)
        return EXIT_OK if bad == 0 else EXIT_COUNTEREXAMPLES

    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
