"""Command-line front end.

Subcommands: search, verify-signatures, check-lines, gen-lower-bound,
catalog.  All machine-readable output is UTF-8 JSON on stdout (or --out);
progress and diagnostics go to stderr.  RAMSEY_JOBS overrides --jobs.

Exit codes: 0 success / run complete, 1 verification failure or invalid
input configuration, 2 unusable input (parse errors, bad arguments),
3 survivor cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources

from . import catalog, geometry, signature
from .forbidden import FamilyError, family_from_json, load_family
from .graphs import GraphError, canonical_form
from .search import (
    DEFAULT_SURVIVOR_CAP,
    SearchCapExceeded,
    SearchOptions,
    run_search,
)

FAMILY_ALIASES = {"default": "default_family.json", "r34": "r34_family.json"}
LEMMA_KINDS = ("cycle(5)", "cycle(7)", "cycle(9)", "h7")


@dataclass
class RunConfig:
    """Validated knobs shared by the subcommands."""

    family: str = "default"
    n_max: int = 10
    jobs: int = 1
    seed: int = 0
    trials: int = 1000
    out: str | None = None
    witnesses: str | None = None
    cap: int = DEFAULT_SURVIVOR_CAP

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError("worker count must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 1 <= self.n_max <= 16:
            raise ValueError("n must be in 1..16")


def _data_text(name: str) -> str:
    return resources.files("champagne").joinpath("data", name).read_text("utf-8")


def bundled_path(name: str) -> str:
    """Filesystem path of a bundled data file (for docs and tests)."""
    return str(resources.files("champagne").joinpath("data", name))


def _resolve_family(spec: str):
    if spec in FAMILY_ALIASES:
        return family_from_json(json.loads(_data_text(FAMILY_ALIASES[spec])))
    return load_family(spec)


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _effective_jobs(args) -> int:
    env = os.environ.get("RAMSEY_JOBS")
    if env is not None:
        return int(env)
    if args.jobs is not None:
        return args.jobs
    return os.cpu_count() or 1


def cmd_search(args) -> int:
    try:
        cfg = RunConfig(
            family=args.family,
            n_max=args.n,
            jobs=_effective_jobs(args),
            seed=args.seed,
            out=args.out,
            witnesses=args.witnesses,
            cap=args.cap,
        )
        fam = _resolve_family(cfg.family)
    except (FamilyError, GraphError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    opts = SearchOptions(
        jobs=cfg.jobs,
        cap=cfg.cap,
        witness_path=cfg.witnesses,
        collect_witnesses=args.embed_witnesses,
        progress=not args.quiet,
        seed=cfg.seed,
    )
    try:
        report = run_search(fam, cfg.n_max, opts)
    except SearchCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(exc.report.to_json_obj(), cfg.out)
        return 3
    _emit(report.to_json_obj(), cfg.out)
    return 0


def _catalog_signature_checks():
    """Adjacency-matrix signatures of the catalog graphs covered by the
    sign-pattern facts: odd cycles and H7."""
    checks = []
    for n in (3, 5, 7):
        m = signature.SymMatrix.adjacency(catalog.get(f"C{n}"))
        got = signature.signature_exact(m).as_tuple()
        expected = signature.expected_cycle_signature(n)
        checks.append(
            {
                "name": f"C{n}",
                "expected": list(expected),
                "got": list(got),
                "passed": got == expected,
            }
        )
    m = signature.SymMatrix.adjacency(catalog.get("H7"))
    got = signature.signature_exact(m).as_tuple()
    checks.append(
        {
            "name": "H7",
            "expected": list(signature.H7_SIGNATURE),
            "got": list(got),
            "passed": got == signature.H7_SIGNATURE,
        }
    )
    return checks


def cmd_verify_signatures(args) -> int:
    try:
        cfg = RunConfig(trials=args.trials, seed=args.seed, out=args.out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    corrupt = (0, 1) if args.selftest_corrupt else None
    lemmas = []
    for kind in LEMMA_KINDS:
        report = signature.verify_pattern_lemma(
            kind, cfg.trials, cfg.seed, corrupt_slot=corrupt
        )
        lemmas.append(report.to_json_obj())
        status = "ok" if report.passed else "FAIL"
        print(f"{kind}: {status} ({cfg.trials} trials)", file=sys.stderr)
        for failure in report.failures[:1]:
            print(
                "counterexample: " + json.dumps(failure, sort_keys=True),
                file=sys.stderr,
            )
    checks = _catalog_signature_checks()
    for check in checks:
        status = "ok" if check["passed"] else "FAIL"
        print(
            f"adjacency {check['name']}: {status} "
            f"(signature {tuple(check['got'])})",
            file=sys.stderr,
        )
    passed = all(l["passed"] for l in lemmas) and all(c["passed"] for c in checks)
    _emit(
        {
            "trials": cfg.trials,
            "seed": cfg.seed,
            "passed": passed,
            "lemmas": lemmas,
            "catalog_checks": checks,
        },
        cfg.out,
    )
    return 0 if passed else 1


def cmd_check_lines(args) -> int:
    try:
        if args.config == "-":
            cfg = geometry.LineConfig.from_json_obj(json.load(sys.stdin))
        else:
            cfg = geometry.load_config(args.config)
        if args.tol is not None:
            cfg = geometry.LineConfig(cfg.dim, cfg.lines, args.tol)
    except (geometry.GeometryError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.distances_only:
        k = len(cfg)
        worst = 0.0
        pairs = []
        for v in range(k):
            for w in range(v + 1, k):
                a, b = cfg.lines[v], cfg.lines[w]
                dist = geometry.line_distance(a, b)
                worst = max(worst, abs(dist - 1.0))
                pairs.append(
                    {
                        "v": v,
                        "w": w,
                        "distance": dist,
                        "parallel": geometry.are_parallel(a, b),
                        "coplanar": False,
                        "chirality": None,
                    }
                )
        ok = worst <= cfg.tolerance
        _emit(
            {
                "mode": "distances-only",
                "valid": ok,
                "config": {
                    "dim": cfg.dim,
                    "count": k,
                    "tolerance": cfg.tolerance,
                    "valid": ok,
                    "distances_ok": ok,
                    "has_parallel": any(p["parallel"] for p in pairs),
                    "has_coplanar": False,
                    "pairs": pairs,
                },
            },
            args.out,
        )
        return 0 if ok else 1

    try:
        graph, report = geometry.chirality_graph(cfg)
    except geometry.GeometryError as exc:
        # chirality is undefined outside R^3; distance checks still apply
        print(f"error: {exc} (try --distances-only)", file=sys.stderr)
        return 1
    result = {
        "mode": "full",
        "config": report.to_json_obj(),
        "chirality_graph6": graph.to_graph6(),
        "realization": None,
        "valid": False,
    }
    if not report.valid:
        for pair in report.pairs:
            if pair["parallel"] or abs(pair["distance"] - 1.0) > cfg.tolerance:
                print(
                    f"bad pair ({pair['v']},{pair['w']}): distance="
                    f"{pair['distance']:.6g} parallel={pair['parallel']}",
                    file=sys.stderr,
                )
        _emit(result, args.out)
        return 1
    try:
        realization = geometry.check_realization(cfg)
    except geometry.GeometryError as exc:
        result["error"] = str(exc)
        print(f"error: {exc}", file=sys.stderr)
        _emit(result, args.out)
        return 1
    result["realization"] = realization.to_json_obj()
    result["valid"] = realization.passed
    _emit(result, args.out)
    return 0 if realization.passed else 1


def cmd_gen_lower_bound(args) -> int:
    try:
        cfg = geometry.lower_bound_config(args.dim)
    except geometry.GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(cfg.to_json_obj(), args.out)
    return 0


def cmd_catalog(args) -> int:
    lines = []
    for entry in catalog.named_graphs():
        g = entry.graph
        edges = ",".join(f"{u + 1}{v + 1}" for u, v in sorted(g.edges()))
        lines.append(
            f"{entry.name:6s} n={g.n} edges={{{edges}}} "
            f"graph6={g.to_graph6()} canonical={canonical_form(g).code}"
        )
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="champagne",
        description=(
            "Verification toolkit for the mutually-touching-cylinders bound: "
            "feasible-coloring search, sign-pattern signatures, and "
            "equidistant line configurations."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="grow feasible 2-colorings level by level")
    p.add_argument("--family", default="default",
                   help="'default', 'r34', or a family JSON path")
    p.add_argument("--n", type=int, default=10, help="largest vertex count")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: all cores; RAMSEY_JOBS overrides)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_SURVIVOR_CAP,
                   help="per-level survivor cap")
    p.add_argument("--witnesses", metavar="PATH",
                   help="write final-level survivors to a graph6 file")
    p.add_argument("--embed-witnesses", action="store_true",
                   help="embed final-level survivors in the report JSON")
    p.add_argument("--out", metavar="PATH", help="write report JSON here")
    p.add_argument("--quiet", action="store_true", help="no progress lines")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-signatures",
                       help="randomized sign-pattern signature verification")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--selftest-corrupt", action="store_true",
                   help="zero one pattern slot per sample; the checks must fail")
    p.set_defaults(func=cmd_verify_signatures)

    p = sub.add_parser("check-lines",
                       help="validate a line configuration file ('-' for stdin)")
    p.add_argument("config", help="LineConfig JSON path or '-'")
    p.add_argument("--distances-only", action="store_true",
                   help="check unit distances only (parallel pairs allowed)")
    p.add_argument("--tol", type=float, default=None,
                   help="override the config's distance tolerance")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_check_lines)

    p = sub.add_parser("gen-lower-bound",
                       help="emit 2n-2 pairwise unit-distance lines in R^n")
    p.add_argument("--dim", type=int, required=True, help="ambient dimension n >= 3")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gen_lower_bound)

    p = sub.add_parser("catalog", help="list the named small graphs")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
