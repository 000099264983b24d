"""
Command-line interface.

    arbor stats --family complete --n 10
    arbor table --from 10 --to 100 --step 10
    arbor poly --family theta --a 4 --b 4
    arbor local --n 10
    arbor bounds --from 4 --to 150
    arbor sample --family complete --n 8 --measure weighted --seed 1 --count 5
    arbor check unimodal --family theta --a 4 --b 4
    arbor check search --max-n 6 --checks unimodal,monotonicity
    arbor constants

JSON and CSV go to stdout, diagnostics to stderr.  Exit status: 0 success,
1 domain or parse error, 2 census budget exhausted, 3 a check found a
violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import asymptotics, conjectures
from .closed_form import family_counts
from .core import ArborError, Graph, build_family, parse_edge_list
from .enumeration import DEFAULT_BUDGET, BudgetExceeded, local_subtree_polynomial, subtree_polynomial
from .sampler import SampleSpec, draw_log, sample_complete, sample_generic
from .stats import global_stats, local_stats, local_stats_complete

EXIT_OK, EXIT_ERROR, EXIT_BUDGET, EXIT_VIOLATION = 0, 1, 2, 3

VERBS = ("stats", "table", "poly", "local", "bounds", "sample", "check", "constants")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _target_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("target graph")
    src = g.add_mutually_exclusive_group()
    src.add_argument("--family", choices=("complete", "bipartite", "complete_bipartite", "cycle", "theta"))
    src.add_argument("--graph", metavar="FILE", help="edge-list file ('-' for stdin)")
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--a", type=int)
    g.add_argument("--b", type=int)


def _common_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="census work budget in extension steps")
    p.add_argument("--pretty", action="store_true", help="human-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arbor", description="Exact subtree statistics of graphs.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", help="p, q, mu_p, mu_q of a graph")
    _target_options(p)
    p.add_argument("--route", choices=("auto", "closed", "enumerate"), default="auto")
    _common_options(p)

    p = sub.add_parser("table", help="convergence table for K_n as CSV")
    p.add_argument("--from", dest="start", type=int, default=10)
    p.add_argument("--to", dest="stop", type=int, default=100)
    p.add_argument("--step", type=int, default=10)
    _common_options(p)

    p = sub.add_parser("poly", help="subtree polynomial as a JSON array")
    _target_options(p)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--with-empty", action="store_true", help="set a_0 = n")
    _common_options(p)

    p = sub.add_parser("local", help="statistics of subtrees through a fixed edge")
    _target_options(p)
    p.add_argument("--edge", help="'u,v'; defaults to the smallest edge")
    _common_options(p)

    p = sub.add_parser("bounds", help="certified bound checks for K_n")
    p.add_argument("--from", dest="start", type=int, default=4)
    p.add_argument("--to", dest="stop", type=int, default=150)
    p.add_argument("--which", choices=("both", "B", "A"), default="both")
    _common_options(p)

    p = sub.add_parser("sample", help="seeded random subtrees")
    _target_options(p)
    p.add_argument("--measure", choices=("uniform", "weighted"), default="uniform")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    _common_options(p)

    p = sub.add_parser("check", help="unimodality, monotonicity and identity checks")
    p.add_argument("conjecture", choices=("unimodal", "monotonicity", "pq-identity", "search"))
    _target_options(p)
    p.add_argument("--coeffs", help="comma-separated a_1,a_2,... (unimodal only)")
    p.add_argument("--measure", choices=("mu_p", "mu_q"), default="mu_p")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--checks", default="unimodal,monotonicity,pq_identity")
    p.add_argument("--labeled", action="store_true", help="skip isomorphism rejection")
    _common_options(p)

    p = sub.add_parser("constants", help="certified limit constants")
    _common_options(p)
    return parser


def _family_params(args) -> tuple[str, list[int]]:
    fam = "complete_bipartite" if args.family == "bipartite" else args.family
    need = {"complete": ("n",), "cycle": ("n",), "complete_bipartite": ("m", "n"), "theta": ("a", "b")}[fam]
    missing = [f"--{x}" for x in need if getattr(args, x) is None]
    if missing:
        raise ArborError(f"--family {args.family} needs {' '.join(missing)}")
    return fam, [getattr(args, x) for x in need]


def _load_graph(args) -> tuple[Graph, str | None, list[int] | None]:
    if args.graph:
        text = sys.stdin.read() if args.graph == "-" else open(args.graph).read()
        return parse_edge_list(text), None, None
    if args.family:
        fam, params = _family_params(args)
        return build_family(fam, params), fam, params
    raise ArborError("give a target with --family or --graph")


def _emit(obj, pretty: bool) -> None:
    print(json.dumps(obj, indent=2 if pretty else None))


def _cmd_stats(args) -> int:
    g, fam, params = _load_graph(args)
    counts = family_counts(fam, params) if fam and args.route != "enumerate" else None
    if args.route == "closed" and counts is None:
        raise ArborError("no closed form for this target")
    if counts is None:
        counts = subtree_polynomial(g, budget=args.budget, jobs=args.jobs)
        route = "enumerate"
    else:
        route = "closed"
    out = {"route": route, **global_stats(counts, g.vertex_count).as_dict()}
    if args.pretty:
        for key in ("p", "q", "mu_p", "mu_q"):
            print(f"{key:5} {out[key]['raw']:>24}  = {out[key]['dec']}")
    else:
        _emit(out, False)
    return EXIT_OK


def _cmd_table(args) -> int:
    if args.step < 1:
        raise ArborError("--step must be positive")
    rows = asymptotics.convergence_table(range(args.start, args.stop + 1, args.step), jobs=args.jobs)
    if args.pretty:
        header = asymptotics.CSV_HEADER.split(",")
        print("  ".join(f"{h:>10}" for h in header))
        for row in rows:
            print("  ".join(f"{c:>10}" for c in row.cells()))
    else:
        sys.stdout.write(asymptotics.table_csv(rows))
    return EXIT_OK


def _cmd_poly(args) -> int:
    g, _, _ = _load_graph(args)
    poly = subtree_polynomial(g, args.max_edges, budget=args.budget,
                              include_empty=args.with_empty, jobs=args.jobs)
    print(str(poly) if args.pretty else poly.to_json())
    return EXIT_OK


def _cmd_local(args) -> int:
    if args.family is None and args.graph is None:
        args.family = "complete"
    if args.family == "complete" and args.edge is None:
        _, params = _family_params(args)
        report = local_stats_complete(params[0])
    else:
        g, _, _ = _load_graph(args)
        if args.edge:
            edge = tuple(int(x) for x in args.edge.replace(" ", ",").split(",") if x)
        elif g.edges:
            edge = g.sorted_edges()[0]
        else:
            raise ArborError("graph has no edges")
        poly = local_subtree_polynomial(g, edge, budget=args.budget)
        report = local_stats(poly, g.vertex_count)
    _emit(report.as_dict(), args.pretty)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    status = EXIT_OK
    for n in range(args.start, args.stop + 1):
        checks = []
        if args.which in ("both", "B") and n >= 4:
            checks.append(asymptotics.verify_B_lower_bound(n))
        if args.which in ("both", "A") and n >= 2:
            checks.append(asymptotics.verify_A_sandwich(n))
        for c in checks:
            print(json.dumps(c.as_dict()))
            if not c.verdict:
                status = EXIT_VIOLATION
    return status


def _cmd_sample(args) -> int:
    g, fam, params = _load_graph(args)
    label = f"{fam}{tuple(params)}" if fam else (args.graph or "")
    spec = SampleSpec(label, args.measure, args.seed, args.count)
    if fam == "complete":
        draws = sample_complete(params[0], spec)
    else:
        draws = sample_generic(g, spec, budget=args.budget)
    for line in draw_log(spec, draws):
        print(line)
    return EXIT_OK


def _cmd_check(args) -> int:
    which = args.conjecture
    if which == "search":
        checks = [c.strip().replace("-", "_") for c in args.checks.split(",") if c.strip()]
        summary = conjectures.search_small_graphs(
            args.max_n, checks, up_to_isomorphism=not args.labeled,
            measure=args.measure, budget=args.budget, jobs=args.jobs,
        )
        for v in summary.violations:
            print(v.to_json())
        print(json.dumps({"summary": summary.as_dict()}))
        return EXIT_OK if summary.ok else EXIT_VIOLATION

    if which == "unimodal" and args.coeffs:
        try:
            seq = [int(x) for x in args.coeffs.split(",")]
        except ValueError:
            raise ArborError(f"--coeffs must be comma-separated integers, got {args.coeffs!r}") from None
        verdicts = [conjectures.check_unimodal(seq, "coeffs")]
    else:
        g, _, _ = _load_graph(args)
        name = conjectures.describe(g)
        if which == "unimodal":
            poly = subtree_polynomial(g, budget=args.budget, jobs=args.jobs)
            verdicts = [conjectures.check_unimodal(poly, name)]
        elif which == "monotonicity":
            verdicts = conjectures.check_monotonicity(g, measure=args.measure, budget=args.budget)
        else:
            verdicts = [conjectures.check_pq_identity(g, budget=args.budget)]
    for v in verdicts:
        print(v.to_json())
    return EXIT_OK if all(v.holds for v in verdicts) else EXIT_VIOLATION


def _cmd_constants(args) -> int:
    _emit([c.as_dict() for c in asymptotics.limit_constants()], args.pretty)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    handler = globals()[f"_cmd_{args.verb}"]
    try:
        return handler(args)
    except BudgetExceeded as exc:
        print(f"arbor: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ArborError, ValueError, OSError) as exc:
        print(f"arbor: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
