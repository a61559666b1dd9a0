"""Command-line front end.

Subcommands: build, switch, verify, recipe, search, spectrum.  Graph inputs
accept a scheme-parameter string (J{2}(8,4), Jq{0}(6,3;q=2)) or a path to a
graph6 or edge-list JSON file.  Exit codes: 0 success, 1 usage error,
2 invalid spec, 3 inconclusive, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .canon import BudgetExhaustedError, DEFAULT_NODE_BUDGET
from .certify import nonisomorphic
from .families import (
    REPORT_SCHEMA_VERSION,
    RecipeStageError,
    SPORADIC_NAMES,
    recipe_halfrange_2kk,
    recipe_j2n4,
    recipe_qkneser,
    recipe_sporadic,
    run_recipe,
)
from .graphcore import Graph, decode_graph6, encode_graph6, Graph6ParseError
from .schemes import (
    DEFAULT_VERTEX_CAP,
    SchemeParams,
    VertexCapExceeded,
    build,
)
from .search import (
    SearchConfig,
    johnson_block_triples,
    johnson_core_triples,
    search_gm4,
    search_wqh33,
)
from .spectra import cospectral, eigenvalues_float, random_primes, signature
from .switching import (
    InvalidSpecError,
    apply_switching,
    spec_from_json_dict,
    validate,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID_SPEC = 2
EXIT_INCONCLUSIVE = 3
EXIT_CAP = 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(EXIT_USAGE, message)


def _cap_from(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("SPECTRAL_SWITCH_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise CliError(EXIT_USAGE, f"SPECTRAL_SWITCH_CAP={env!r} is not an integer")
    return DEFAULT_VERTEX_CAP


def _load_graph(src: str, cap: int) -> Graph:
    try:
        params = SchemeParams.parse(src)
    except ValueError:
        params = None
    if params is not None:
        return build(params, cap)
    if not os.path.exists(src):
        raise CliError(
            EXIT_USAGE,
            f"{src!r} is neither parseable scheme parameters nor an existing file",
        )
    with open(src, "rb") as fh:
        data = fh.read()
    stripped = data.lstrip()
    if stripped.startswith(b"{"):
        try:
            return Graph.from_json_dict(json.loads(data))
        except ValueError as exc:
            raise CliError(EXIT_USAGE, f"{src}: {exc}")
    try:
        return decode_graph6(data.splitlines()[0] if data else data)
    except Graph6ParseError as exc:
        raise CliError(EXIT_USAGE, f"{src}: {exc}")


def _write_graph(g: Graph, path: str, fmt: str) -> None:
    if fmt == "graph6":
        with open(path, "wb") as fh:
            fh.write(encode_graph6(g) + b"\n")
    else:
        with open(path, "w") as fh:
            json.dump(g.to_json_dict(), fh)
            fh.write("\n")


def _stats_line(g: Graph) -> str:
    deg = g.is_regular()
    if deg is None:
        degs = g.degrees()
        return f"n={g.n} m={g.num_edges()} degrees={min(degs)}..{max(degs)}"
    return f"n={g.n} m={g.num_edges()} k-regular={deg}"


def _load_spec(path: str, g: Graph):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"cannot read spec file: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_INVALID_SPEC, f"spec file is not valid JSON: {exc}")
    try:
        return spec_from_json_dict(obj, g)
    except (ValueError, InvalidSpecError) as exc:
        raise CliError(EXIT_INVALID_SPEC, str(exc))


def _emit_report(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_build(args) -> int:
    cap = _cap_from(args)
    try:
        params = SchemeParams.parse(args.params)
    except ValueError as exc:
        raise CliError(EXIT_INVALID_SPEC, str(exc))
    g = build(params, cap)
    if args.out:
        _write_graph(g, args.out, args.format)
    print(_stats_line(g))
    return EXIT_OK


def cmd_switch(args) -> int:
    cap = _cap_from(args)
    g = _load_graph(args.graph, cap)
    spec = _load_spec(args.spec, g)
    report = validate(g, spec)
    if not report.valid:
        for violation in report.violations[:5]:
            print(f"violation {violation.condition}: {violation.message}", file=sys.stderr)
        raise CliError(EXIT_INVALID_SPEC,
                       f"spec fails {len(report.violations)} condition(s)")
    mate = apply_switching(g, spec)
    if args.out:
        _write_graph(mate, args.out, args.format)
    print(_stats_line(mate))
    return EXIT_OK


def cmd_verify(args) -> int:
    cap = _cap_from(args)
    g = _load_graph(args.graph, cap)
    spec = _load_spec(args.spec, g)
    report = validate(g, spec)
    out = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "kind": "verify",
        "seed": args.seed,
        "num_primes": args.primes,
        "validation": report.to_json_dict(),
    }
    if not report.valid:
        _emit_report(out, args.report)
        return EXIT_INVALID_SPEC
    mate = apply_switching(g, spec)
    cv = cospectral(g, mate, num_primes=args.primes, seed=args.seed,
                    threads=args.threads)
    nv = nonisomorphic(g, mate, args.budget)
    out["cospectral"] = cv.to_json_dict()
    out["nonisomorphic"] = nv.to_json_dict()
    ok = report.valid and cv.equal and nv.distinguished
    out["passed"] = ok
    _emit_report(out, args.report)
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


def cmd_recipe(args) -> int:
    name = args.recipe_name
    try:
        if name == "j2n4":
            if args.n is None:
                raise CliError(EXIT_USAGE, "recipe j2n4 needs --n")
            recipe = recipe_j2n4(args.n)
        elif name == "halfrange":
            if args.k is None:
                raise CliError(EXIT_USAGE, "recipe halfrange needs --k")
            recipe = recipe_halfrange_2kk(args.k)
        elif name == "qkneser":
            if args.n is None or args.k is None:
                raise CliError(EXIT_USAGE, "recipe qkneser needs --n and --k")
            recipe = recipe_qkneser(args.n, args.k)
        elif name == "sporadic":
            if not args.name:
                raise CliError(
                    EXIT_USAGE,
                    f"recipe sporadic needs --name (one of {', '.join(SPORADIC_NAMES)})",
                )
            recipe = recipe_sporadic(args.name)
        else:
            raise CliError(EXIT_USAGE, f"unknown recipe {name!r}")
    except ValueError as exc:
        raise CliError(EXIT_INVALID_SPEC, str(exc))
    cap = _cap_from(args)
    try:
        report = run_recipe(recipe, num_primes=args.primes, seed=args.seed,
                            threads=args.threads, budget=args.budget, cap=cap)
    except RecipeStageError as exc:
        cause = exc.__cause__
        if isinstance(cause, VertexCapExceeded):
            raise CliError(EXIT_CAP, str(exc))
        if isinstance(cause, BudgetExhaustedError):
            raise CliError(EXIT_INCONCLUSIVE, str(exc))
        raise CliError(EXIT_INVALID_SPEC, str(exc))
    _emit_report(report.to_json_dict(), args.report)
    if report.passed:
        return EXIT_OK
    if report.noniso_verdict.node_budget_exhausted:
        return EXIT_INCONCLUSIVE
    return EXIT_INCONCLUSIVE


def cmd_search(args) -> int:
    cap = _cap_from(args)
    cfg = SearchConfig(mode=args.mode, max_candidates=args.limit,
                       time_budget=args.budget, dedup=not args.no_dedup)
    g = _load_graph(args.graph, cap)
    if args.mode == "gm4":
        result = search_gm4(g, cfg)
    else:
        candidates = None
        if args.candidates:
            with open(args.candidates) as fh:
                candidates = [tuple(t) for t in json.load(fh)]
        else:
            try:
                params = SchemeParams.parse(args.graph)
            except ValueError:
                raise CliError(
                    EXIT_USAGE,
                    "wqh33 needs --candidates, or a johnson scheme parameter "
                    "string as --graph so --pattern can generate them",
                )
            if params.kind != "johnson":
                raise CliError(EXIT_USAGE, "--pattern generators need a johnson scheme")
            if args.pattern == "blocks":
                candidates = johnson_block_triples(params.n, params.k)
            else:
                candidates = johnson_core_triples(params.n, params.k)
        result = search_wqh33(g, candidates, candidates, cfg)
    out = result.to_json_dict()
    out["schema_version"] = REPORT_SCHEMA_VERSION
    out["kind"] = "search"
    out["mode"] = args.mode
    _emit_report(out, args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    cap = _cap_from(args)
    g = _load_graph(args.graph, cap)
    primes = random_primes(args.primes, args.seed)
    out = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "kind": "spectrum",
        "seed": args.seed,
        "num_primes": args.primes,
        "signature": signature(g, primes, args.threads).to_json_dict(),
    }
    if args.eigenvalues:
        out["eigenvalues_float"] = eigenvalues_float(g)
    if args.compare:
        other = _load_graph(args.compare, cap)
        out["cospectral"] = cospectral(g, other, num_primes=args.primes,
                                       seed=args.seed,
                                       threads=args.threads).to_json_dict()
    _emit_report(out, args.report)
    return EXIT_OK


def _add_common(p, cap=True, threads=True):
    if cap:
        p.add_argument("--cap", type=int, default=None,
                       help="vertex cap (default 100000; env SPECTRAL_SWITCH_CAP)")
    if threads:
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for per-prime charpoly runs")


def build_parser() -> _Parser:
    parser = _Parser(prog="spectral-switch",
                     description="Johnson/Grassmann graphs, spectrum-preserving "
                                 "switching, and non-isomorphism certification")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a scheme graph")
    p.add_argument("params", help="scheme parameters, e.g. 'J{2}(8,4)'")
    p.add_argument("--out", help="output file")
    p.add_argument("--format", choices=("graph6", "json"), default="graph6")
    _add_common(p, threads=False)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("switch", help="apply a switching spec")
    p.add_argument("--graph", required=True, help="scheme params or graph file")
    p.add_argument("--spec", required=True, help="switching spec JSON file")
    p.add_argument("--out", help="output file for the switched graph")
    p.add_argument("--format", choices=("graph6", "json"), default="graph6")
    _add_common(p, threads=False)
    p.set_defaults(func=cmd_switch)

    p = sub.add_parser("verify", help="validate, switch, test cospectrality "
                                      "and non-isomorphism")
    p.add_argument("--graph", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--report", help="write the JSON report here as well")
    p.add_argument("--primes", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET,
                   help="canonical labeling node budget")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("recipe", help="run a named construction end to end")
    p.add_argument("recipe_name",
                   choices=("j2n4", "halfrange", "qkneser", "sporadic"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--name", help="sporadic table entry name")
    p.add_argument("--report", help="write the JSON report here as well")
    p.add_argument("--primes", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    _add_common(p)
    p.set_defaults(func=cmd_recipe)

    p = sub.add_parser("search", help="search for switching sets")
    p.add_argument("--mode", choices=("gm4", "wqh33"), required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--limit", type=int, default=10_000_000,
                   help="max candidates examined")
    p.add_argument("--budget", type=float, default=300.0, help="time budget, seconds")
    p.add_argument("--out", help="write found specs here as well")
    p.add_argument("--pattern", choices=("core", "blocks"), default="core",
                   help="wqh33 candidate generator")
    p.add_argument("--candidates", help="JSON file of candidate triples (wqh33)")
    p.add_argument("--no-dedup", action="store_true")
    _add_common(p, threads=False)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("spectrum", help="charpoly signature, optional comparison")
    p.add_argument("--graph", required=True)
    p.add_argument("--compare", help="second graph to test cospectrality against")
    p.add_argument("--primes", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eigenvalues", action="store_true",
                   help="include floating-point eigenvalues")
    p.add_argument("--report", help="write the JSON report here as well")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InvalidSpecError as exc:
        print(f"error: invalid spec: {exc}", file=sys.stderr)
        return EXIT_INVALID_SPEC
    except VertexCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except BudgetExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_SPEC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
