"""Command-line surface: build, analyze, ham, verify-fixtures, sweep, export.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import metrics, structure
from .errors import DomainError, FixtureParseError, LayoutError
from .graphs import EvenGraph, build_graph, spec_from_kind
from .hamilton import (
    FAMILIES,
    HamCertificate,
    align_cycle,
    builtin_fixtures,
    family_spec,
    ham_cycle,
    ham_path,
    load_fixture_file,
    verify_certificate,
)
from .oddsets import KIND_INTERSECTION, KIND_PMM
from .sweep import SweepManifest, default_workers, run_sweep

_KIND_TO_FAMILY = {"pmm3": "g3", "pmm5": "g5", "g35": "g35"}


def _fmt(value) -> str:
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return str(value)


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _decomposition_summary(graph: EvenGraph) -> dict | None:
    spec = graph.spec
    odd = spec.odd_set
    n = spec.n
    if odd.kind == KIND_PMM and odd.primes == (3,):
        dec = structure.decompose_g3(n)
        problems = structure.validate_g3(graph, dec)
        return {"independent": len(dec.v1) + len(dec.v2),
                "paths": 1, "path_lengths": [len(dec.path)],
                "valid": not problems, "problems": problems}
    if odd.kind == KIND_PMM and odd.primes == (5,):
        dec = structure.decompose_g5(n)
        problems = structure.validate_g5(graph, dec)
        return {"independent": len(dec.a) + len(dec.f), "paths": 2,
                "path_lengths": [len(dec.path_bd), len(dec.path_ce)],
                "blocks": {k: len(getattr(dec, k)) for k in "adefbc"},
                "valid": not problems, "problems": problems}
    if odd.kind == KIND_PMM:
        dec = structure.generalized_decomposition(odd.primes[0], n)
        problems = structure.validate_generalized(graph, dec)
        return {"independent": len(dec.indep_x) + len(dec.indep_y),
                "paths": len(dec.paths),
                "path_lengths": [len(p) for p in dec.paths],
                "valid": not problems, "problems": problems}
    if odd.kind == KIND_INTERSECTION and odd.primes == (3, 5) and n >= 13:
        dec = structure.decompose_g35(n)
        problems = structure.validate_g35(graph, dec)
        return {"independent": len(dec.v1) + len(dec.v2),
                "initial_path": list(dec.initial_path),
                "strips": len(dec.strips),
                "full_strips": sum(1 for s in dec.strips if len(s) == 5),
                "valid": not problems, "problems": problems}
    return None


def cmd_analyze(args) -> int:
    spec = spec_from_kind(args.kind, args.n)
    graph = build_graph(spec)
    x, y = graph.partite_sets()
    components = metrics.connected_components(graph)
    diam = metrics.diameter(graph)
    cycle_len = structure.girth(graph)
    report = {
        "kind": spec.kind_label,
        "n": args.n,
        "vertices": graph.vertex_count,
        "edges": graph.edge_count,
        "partite_sizes": [len(x), len(y)],
        "components": len(components),
        "diameter": _fmt(diam),
        "girth": _fmt(cycle_len),
    }
    if args.max_cycle_length:
        census = structure.induced_cycle_census(graph, args.max_cycle_length)
        report["induced_cycle_lengths"] = sorted(census)
    if graph.vertex_count <= 12:
        shape = structure.small_shape_label(graph)
        if shape:
            report["shape"] = shape
    summary = _decomposition_summary(graph)
    if summary is not None:
        report["decomposition"] = summary
    if args.biadjacency:
        layout = structure.biadjacency(graph)
        report["biadjacency"] = {
            "rule": layout.rule,
            "rows": list(layout.rows),
            "cols": list(layout.cols),
            "matrix": layout.matrix.tolist(),
        }
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        for key, value in report.items():
            print(f"{key}: {value}")
    summary_ok = summary is None or summary.get("valid", True)
    return 0 if summary_ok else 1


# ---------------------------------------------------------------------------
# build / ham / verify-fixtures
# ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    spec = spec_from_kind(args.kind, args.n)
    graph = build_graph(spec)
    x, y = graph.partite_sets()
    print(f"{spec.kind_label} n={args.n}: {graph.vertex_count} vertices, "
          f"{graph.edge_count} edges, partite sizes {len(x)}/{len(y)}")
    print(f"odd set: {spec.odd_set.describe()}")
    return 0


def cmd_ham(args) -> int:
    family = _KIND_TO_FAMILY.get(args.kind)
    if family is None:
        raise DomainError(
            f"cycle constructors cover kinds {sorted(_KIND_TO_FAMILY)}, "
            f"got {args.kind!r}")
    cert = ham_path(family, args.n) if args.path else ham_cycle(family, args.n)
    print(",".join(str(v) for v in cert.sequence))
    if args.verify:
        graph = build_graph(cert.spec)
        cert = verify_certificate(graph, cert)
        if not cert.verified:
            print(f"verification failed: {cert.failure}", file=sys.stderr)
            return 1
        print("verified", file=sys.stderr)
    return 0


def cmd_verify_fixtures(args) -> int:
    if args.file:
        fixtures = load_fixture_file(args.file)
        if not fixtures:
            print("warning: fixture file holds no records", file=sys.stderr)
            return 0
    else:
        fixtures = builtin_fixtures()
    failures = 0
    for (family, n), seq in sorted(fixtures.items()):
        spec = family_spec(family, n)
        graph = build_graph(spec)
        cert = verify_certificate(graph, HamCertificate(spec, seq, closed=True))
        if not cert.verified:
            failures += 1
            print(f"FAIL {family} n={n}: {cert.failure}")
            continue
        built = ham_cycle(family, n).sequence
        if align_cycle(built, seq) != seq:
            failures += 1
            print(f"FAIL {family} n={n}: constructor differs from fixture")
            print(f"  fixture:     {','.join(map(str, seq))}")
            print(f"  constructor: {','.join(map(str, built))}")
            continue
        print(f"ok {family} n={n}")
    if failures:
        print(f"{failures} fixture check(s) failed", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def render_dot(graph: EvenGraph) -> str:
    x, y = graph.partite_sets()
    lines = ["graph evens {"]
    lines.append("  { rank=same; " + "; ".join(str(v) for v in x) + "; }")
    lines.append("  { rank=same; " + "; ".join(str(v) for v in y) + "; }")
    for u, w in graph.edge_values():
        lines.append(f"  {u} -- {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_edge_csv(graph: EvenGraph) -> str:
    return "".join(f"{u},{w}\n" for u, w in graph.edge_values())


def render_biadjacency(graph: EvenGraph) -> str:
    layout = structure.biadjacency(graph)
    head = "," + ",".join(str(v) for v in layout.cols)
    rows = [head]
    for label, row in zip(layout.rows, layout.matrix):
        rows.append(str(label) + "," + ",".join(str(int(c)) for c in row))
    return "\n".join(rows) + "\n"


def cmd_export(args) -> int:
    graph = build_graph(spec_from_kind(args.kind, args.n))
    if args.format == "dot":
        text = render_dot(graph)
    elif args.format == "edge-csv":
        text = render_edge_csv(graph)
    else:
        text = render_biadjacency(graph)
    if args.output:
        Path(args.output).write_text(text, "utf-8")
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def cmd_sweep(args) -> int:
    if args.manifest:
        manifest = SweepManifest.load(args.manifest)
    else:
        if not (args.kinds and args.lo and args.hi and args.output):
            raise DomainError(
                "either --manifest or all of --kinds/--lo/--hi/--output")
        manifest = SweepManifest(tuple(args.kinds.split(",")), args.lo,
                                 args.hi, args.step, Path(args.output))
        manifest.save(Path(args.output).with_suffix(".manifest.json"))
    records = run_sweep(manifest, workers=args.workers,
                        progress=not args.quiet)
    print(f"{len(records)} new record(s) -> {manifest.output}",
          file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _add_kind_n(sub, kinds_help="graph kind (pmm3, pmm5, pmm7, g35, "
                "intersect:3,5,7, near-goldbach, goldbach)"):
    sub.add_argument("--kind", required=True, help=kinds_help)
    sub.add_argument("--n", type=int, required=True, help="size parameter n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goldbach-lab",
        description="Odd-even graph families: construction, structure "
                    "verification, Hamiltonian certificates, diameter sweeps")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized sampling (fixed default)")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("build", help="build a graph and print counts")
    _add_kind_n(p)
    p.set_defaults(func=cmd_build)

    p = commands.add_parser("analyze", help="structure and metric report")
    _add_kind_n(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--max-cycle-length", type=int, default=0, metavar="L",
                   help="include induced-cycle census up to L (0 = skip)")
    p.add_argument("--biadjacency", action="store_true",
                   help="include the biadjacency layout")
    p.set_defaults(func=cmd_analyze)

    p = commands.add_parser("ham", help="emit a Hamiltonian certificate")
    p.add_argument("--kind", required=True,
                   help="pmm3, pmm5 or g35 (the constructive families)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--path", action="store_true",
                   help="open path instead of a closed cycle")
    p.add_argument("--verify", action="store_true",
                   help="verify against the built graph; nonzero exit on failure")
    p.set_defaults(func=cmd_ham)

    p = commands.add_parser("verify-fixtures",
                            help="check reference cycles and constructors")
    p.add_argument("--file", help="fixture file (default: embedded set)")
    p.set_defaults(func=cmd_verify_fixtures)

    p = commands.add_parser("sweep", help="connectivity/diameter sweep")
    p.add_argument("--manifest", help="manifest JSON to resume")
    p.add_argument("--kinds", help="comma-separated kinds")
    p.add_argument("--lo", type=int, help="first n")
    p.add_argument("--hi", type=int, help="last n")
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--output", help="CSV path")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker processes (default {default_workers()}, "
                        "capped by GOLDBACH_LAB_THREADS)")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = commands.add_parser("export", help="write dot / edge-csv / biadjacency")
    _add_kind_n(p)
    p.add_argument("--format", choices=("dot", "edge-csv", "biadjacency"),
                   required=True)
    p.add_argument("--output", help="target file (default stdout)")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FixtureParseError as exc:
        print(f"fixture parse error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, LayoutError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
