"""Command-line entry point.

Exit codes: 0 affirmative/success, 1 negative verdict, 2 usage or input
error.  Verdict-bearing commands print JSON with --json; outputs are
byte-deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import ExminorClassId, excluded_minor_set, make_named, twist_classes
from .census import REGISTRY, count_census, run_streaming, verify_equivalence
from .errors import AmbientHypothesisError, DmkitError
from .gf2 import d_of_c, is_binary_dm, parse_matrix
from .higgs import build_higgs_dm, classify_higgs, higgs_lift
from .latticepath import lpdm, parse_region, region_dual, region_minor, region_svg, serialize_region
from .matroid import Matroid
from .minorscan import classify_by_exminors
from .setsystem import SetSystem, parse_set_system, serialize_set_system
from .stacks import classify_stack, stack_of

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _read_system(path: str) -> SetSystem:
    return parse_set_system(Path(path).read_text(encoding="utf-8"))


def _read_matroid(path: str) -> Matroid:
    return Matroid.from_system(_read_system(path))


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _emit_system(system: SetSystem, args) -> None:
    _write_or_print(serialize_set_system(system, fmt=args.format), args.output)


def _split_labels(raw: str) -> list[str]:
    return [p for p in raw.replace(",", " ").split() if p]


def _class_choices() -> list[str]:
    return [c.value for c in ExminorClassId]


def cmd_check(args) -> int:
    system = _read_system(args.file)
    cid = ExminorClassId(args.cls)
    try:
        member, witness = classify_by_exminors(system, cid, cap=args.cap)
    except AmbientHypothesisError as exc:
        payload = {"class": cid.value, "error": f"hypothesis violation: {exc}"}
        print(json.dumps(payload) if args.json else payload["error"], file=sys.stderr)
        return EXIT_ERROR
    payload = {"class": cid.value, "member": member}
    if witness is not None:
        payload["witness"] = {
            "delete": list(witness.deleted),
            "contract": list(witness.contracted),
            "target": witness.target_name,
        }
    print(json.dumps(payload) if args.json else _verdict_text(payload))
    return EXIT_YES if member else EXIT_NO


def _verdict_text(payload: dict) -> str:
    if payload.get("member"):
        return f"member of class {payload['class']}"
    w = payload.get("witness")
    if w:
        return (
            f"not in class {payload['class']}: minor isomorphic to {w['target']} "
            f"(delete {w['delete'] or '[]'}, contract {w['contract'] or '[]'})"
        )
    return f"not in class {payload['class']}"


def cmd_scan(args) -> int:
    return cmd_check(args)


def cmd_minor(args) -> int:
    system = _read_system(args.file)
    result = system.minor(_split_labels(args.delete), _split_labels(args.contract))
    _emit_system(result, args)
    return EXIT_YES


def cmd_twist(args) -> int:
    system = _read_system(args.file)
    _emit_system(system.twist(_split_labels(args.set)), args)
    return EXIT_YES


def cmd_dual(args) -> int:
    _emit_system(_read_system(args.file).dual(), args)
    return EXIT_YES


def cmd_higgs_lift(args) -> int:
    q = _read_matroid(args.quotient)
    lift = _read_matroid(args.lift)
    result = higgs_lift(q, lift, args.index)
    _emit_system(result.system, args)
    return EXIT_YES


def cmd_higgs_build(args) -> int:
    q = _read_matroid(args.quotient)
    lift = _read_matroid(args.lift)
    ks = [int(p) for p in _split_labels(args.index_set)]
    _emit_system(build_higgs_dm(q, lift, ks), args)
    return EXIT_YES


def cmd_higgs_classify(args) -> int:
    system = _read_system(args.file)
    cls = classify_higgs(system)
    payload = {
        "kind": cls.kind,
        "index_set": sorted(cls.index_set) if cls.index_set is not None else None,
        "k": cls.k,
        "failing_layer": cls.failing_layer,
    }
    print(json.dumps(payload) if args.json else
          f"classification: {cls.kind}"
          + (f", K={sorted(cls.index_set)}" if cls.index_set else "")
          + (f", first failing layer {cls.failing_layer}" if cls.failing_layer is not None else ""))
    return EXIT_YES if cls.is_higgs else EXIT_NO


def cmd_lattice_build(args) -> int:
    region = parse_region(Path(args.file).read_text(encoding="utf-8"))
    result = lpdm(region)
    _emit_system(result.system, args)
    return EXIT_YES


def cmd_lattice_svg(args) -> int:
    region = parse_region(Path(args.file).read_text(encoding="utf-8"))
    _write_or_print(region_svg(region), args.output)
    return EXIT_YES


def cmd_lattice_dual(args) -> int:
    region = parse_region(Path(args.file).read_text(encoding="utf-8"))
    _write_or_print(serialize_region(region_dual(region)), args.output)
    return EXIT_YES


def cmd_lattice_minor(args) -> int:
    region = parse_region(Path(args.file).read_text(encoding="utf-8"))
    result = region_minor(region, args.element, args.op)
    _write_or_print(serialize_region(result), args.output)
    return EXIT_YES


def cmd_stack_classify(args) -> int:
    system = _read_system(args.file)
    flags = classify_stack(system)
    stack = stack_of(system)
    layers = [
        {"size": size, "feasible": len(layer.masks)}
        for size, layer in stack.proper_layers()
    ]
    payload = {
        "matroid_stack": flags.matroid_stack,
        "paving_system": flags.paving_system,
        "sparse_paving_system": flags.sparse_paving_system,
        "quotient_system": flags.quotient_system,
        "even": flags.even,
        "delta_matroid": flags.delta_matroid,
        "rank_gaps": list(flags.rank_gaps),
        "gaps_within_bounds": flags.gaps_within_bounds,
        "proper_layers": layers,
    }
    if args.json:
        print(json.dumps(payload))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return EXIT_YES if flags.matroid_stack else EXIT_NO


def cmd_binary_check(args) -> int:
    system = _read_system(args.file)
    member, witness = is_binary_dm(system)
    payload = {"binary": member}
    if witness is not None:
        payload["witness"] = {
            "delete": list(witness.deleted),
            "contract": list(witness.contracted),
            "target": witness.target_name,
        }
    print(json.dumps(payload) if args.json else
          ("binary delta-matroid" if member else
           f"not binary: minor isomorphic to {witness.target_name}"))
    return EXIT_YES if member else EXIT_NO


def cmd_binary_dofc(args) -> int:
    matrix = parse_matrix(Path(args.file).read_text(encoding="utf-8"))
    _emit_system(d_of_c(matrix), args)
    return EXIT_YES


def _print_report(report, args) -> None:
    if args.json:
        doc = json.loads(report.to_json())
        if getattr(args, "timestamps", False):
            import time

            doc["finished_at"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
        print(json.dumps(doc, separators=(", ", ": ")))
    else:
        print(report.summary())


def cmd_census_run(args) -> int:
    if args.n > 4 and args.mode == "exhaustive" and not args.long:
        print("census: exhaustive n > 4 needs --long (hours-scale run)", file=sys.stderr)
        return EXIT_ERROR
    if args.mode == "exhaustive" and (args.long or args.resume or args.jobs > 1):
        report = run_streaming(
            args.n, args.theorem,
            checkpoint_path=args.resume,
            chunk=args.chunk,
            jobs=args.jobs,
        )
    else:
        report = verify_equivalence(
            args.n, args.theorem, args.mode, seed=args.seed,
            count=args.count, dedupe=not args.no_dedupe,
        )
    _print_report(report, args)
    return EXIT_YES if report.ok else EXIT_NO


def cmd_census_count(args) -> int:
    report = count_census(args.n, args.mode, seed=args.seed, count=args.count)
    if args.json:
        _print_report(report, args)
    else:
        print(report.summary() + " | " + json.dumps(report.totals))
    return EXIT_YES if report.ok else EXIT_NO


def cmd_catalog_dump(args) -> int:
    entries = excluded_minor_set(ExminorClassId(args.cls), args.cap)
    payload = [
        {
            "name": e.name,
            "system": json.loads(serialize_set_system(e.system)),
        }
        for e in entries
    ]
    _write_or_print(json.dumps(payload, separators=(", ", ": ")), args.output)
    return EXIT_YES


def cmd_catalog_make(args) -> int:
    _emit_system(make_named(args.name), args)
    return EXIT_YES


def cmd_catalog_twists(args) -> int:
    base = make_named(args.name)
    entries = twist_classes(base, args.name)
    payload = [
        {"name": e.name, "system": json.loads(serialize_set_system(e.system))}
        for e in entries
    ]
    _write_or_print(json.dumps(payload, separators=(", ", ": ")), args.output)
    return EXIT_YES


def _add_io_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=["json", "compact"], default="json")
    p.add_argument("--json", action="store_true", help="machine-readable verdicts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmkit",
        description="Delta-matroid toolkit: set systems, Higgs lifts, "
        "lattice-path constructions, and excluded-minor classifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="excluded-minor class membership")
    p.add_argument("--class", dest="cls", required=True, choices=_class_choices())
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", help="alias of check")
    p.add_argument("--class", dest="cls", required=True, choices=_class_choices())
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("minor", help="normal-form minor S\\X/Y")
    p.add_argument("--delete", default="", help="comma separated labels")
    p.add_argument("--contract", default="", help="comma separated labels")
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("twist", help="partial dual on a subset")
    p.add_argument("--set", required=True, help="comma separated labels")
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("dual", help="twist on the whole ground set")
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_dual)

    higgs = sub.add_parser("higgs", help="Higgs lift operations").add_subparsers(
        dest="subcommand", required=True
    )
    p = higgs.add_parser("lift")
    p.add_argument("--quotient", required=True, help="basis-system file of Q")
    p.add_argument("--lift", required=True, help="basis-system file of L")
    p.add_argument("-i", "--index", type=int, required=True)
    _add_io_arguments(p)
    p.set_defaults(func=cmd_higgs_lift)
    p = higgs.add_parser("build")
    p.add_argument("--quotient", required=True)
    p.add_argument("--lift", required=True)
    p.add_argument("--index-set", required=True, help="comma separated layer indices")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_higgs_build)
    p = higgs.add_parser("classify")
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_higgs_classify)

    lattice = sub.add_parser("lattice", help="lattice-path regions").add_subparsers(
        dest="subcommand", required=True
    )
    p = lattice.add_parser("build")
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_lattice_build)
    p = lattice.add_parser("svg")
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_lattice_svg)
    p = lattice.add_parser("dual")
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_lattice_dual)
    p = lattice.add_parser("minor")
    p.add_argument("--element", type=int, required=True)
    p.add_argument("--op", choices=["delete", "contract"], required=True)
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_lattice_minor)

    stack = sub.add_parser("stack", help="layer classification").add_subparsers(
        dest="subcommand", required=True
    )
    p = stack.add_parser("classify")
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_stack_classify)

    binary = sub.add_parser("binary", help="GF(2) representability").add_subparsers(
        dest="subcommand", required=True
    )
    p = binary.add_parser("check")
    p.add_argument("file")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_binary_check)
    p = binary.add_parser("dofc")
    p.add_argument("file", help="skew-symmetric matrix JSON")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_binary_dofc)

    census = sub.add_parser("census", help="exhaustive verification").add_subparsers(
        dest="subcommand", required=True
    )
    p = census.add_parser("run")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theorem", required=True, choices=sorted(REGISTRY))
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10000)
    p.add_argument("--no-dedupe", action="store_true",
                   help="evaluate every family index, not one per isomorphism class")
    p.add_argument("--long", action="store_true", help="allow hours-scale runs")
    p.add_argument("--resume", default=None, help="checkpoint file for long runs")
    p.add_argument("--chunk", type=int, default=1 << 24)
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for exhaustive index-range scans")
    p.add_argument("--timestamps", action="store_true",
                   help="include a wall-clock stamp in JSON output")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_census_run)
    p = census.add_parser("count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10000)
    p.add_argument("--timestamps", action="store_true",
                   help="include a wall-clock stamp in JSON output")
    _add_io_arguments(p)
    p.set_defaults(func=cmd_census_count)

    cat = sub.add_parser("catalog", help="named systems and tables").add_subparsers(
        dest="subcommand", required=True
    )
    p = cat.add_parser("dump")
    p.add_argument("--class", dest="cls", required=True, choices=_class_choices())
    p.add_argument("--cap", type=int, default=8)
    _add_io_arguments(p)
    p.set_defaults(func=cmd_catalog_dump)
    p = cat.add_parser("make")
    p.add_argument("--name", required=True)
    _add_io_arguments(p)
    p.set_defaults(func=cmd_catalog_make)
    p = cat.add_parser("twists")
    p.add_argument("--name", required=True)
    _add_io_arguments(p)
    p.set_defaults(func=cmd_catalog_twists)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except DmkitError as exc:
        print(f"dmkit: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"dmkit: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
