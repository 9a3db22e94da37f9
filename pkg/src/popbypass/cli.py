"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import analysis, classes, machines, paths, preimage, verification
from .perms import InvalidInputError, format_perm, parse_pattern, parse_perm
from .sweep import default_jobs

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    p.add_argument("--limit", type=int, default=None, help="raise the command's size bound")
    p.add_argument("--allow-long", action="store_true", help="acknowledge that --limit may run for a long time")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="popbypass", description="Pop stack with bypass: sorting maps and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", parents=[common], help="operation log of one run")
    p.add_argument("--machine", default="psb", help="psb, popstack_classic or parallel_psb")
    p.add_argument("perm")

    p = sub.add_parser("count", parents=[common], help="sortable counts per size")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--machine", default=None, help="machine tag; comma list composes in run order")
    g.add_argument("--patterns", default=None, help="comma-separated basis, e.g. '231,4213' or '3 5b 2 4 1'")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("fibers", parents=[common], help="brute-force fiber of a permutation, or a census")
    p.add_argument("perm", nargs="?")
    p.add_argument("--n", type=int, default=None, help="print the fiber-size census of S_n")

    p = sub.add_parser("preimage", parents=[common], help="preimages by the recursive construction")
    p.add_argument("perm")

    p = sub.add_parser("basis", parents=[common], help="basis of psb^-1(Av(rho))")
    p.add_argument("perm")
    p.add_argument("--witness", action="store_true", help="for non-classes, print a closure witness")
    p.add_argument("--n", type=int, default=classes.DEFAULT_BOUND, help="witness search bound")

    p = sub.add_parser("paths", parents=[common], help="restricted Motzkin paths")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true", help="list the paths of size n")

    p = sub.add_parser("series", parents=[common], help="expand the parallel machine's series")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("conjecture", parents=[common], help="simple sortable permutations vs conjecture")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run exhaustive checks")
    p.add_argument("ids", nargs="*", help="check ids (default: all non-diagnostic)")
    p.add_argument("--n", type=int, default=None, help="size bound (default: per check)")
    p.add_argument("--list", action="store_true", help="list registered ids")
    return parser


def _bound(args, default: int) -> int:
    if args.limit is None:
        return default
    if not args.allow_long:
        raise UsageError("--limit needs --allow-long")
    return args.limit


def _emit(args, rows: list, payload=None):
    if args.format == "json":
        print(json.dumps(payload if payload is not None else rows))
        return
    for row in rows:
        print("\t".join(str(x) for x in row) if isinstance(row, (list, tuple)) else row)


def _jobs(args) -> int:
    return args.jobs if args.jobs else default_jobs()


def cmd_trace(args) -> int:
    p = parse_perm(args.perm)
    kind = machines.MachineKind.parse(args.machine)
    if kind is machines.MachineKind.PSB:
        trace = machines.psb_trace(p)
    elif kind is machines.MachineKind.POPSTACK_CLASSIC:
        trace = machines.popstack_classic_trace(p)
    elif kind is machines.MachineKind.PARALLEL_PSB:
        try:
            trace = machines.parallel_psb(p)
        except machines.SortingFailure as exc:
            data = exc.trace.as_dict() | {"failed_at": exc.step}
            _emit(args, [("input", format_perm(p)),
                         ("ops", " ".join(map(str, exc.trace.ops))),
                         ("output", format_perm(exc.trace.output)),
                         ("failed_at", exc.step)], payload=data)
            return EXIT_OK
    else:
        raise UsageError(f"no operation trace for {kind.value}; try 'count'")
    _emit(args, [("input", format_perm(trace.input)),
                 ("ops", " ".join(map(str, trace.ops))),
                 ("output", format_perm(trace.output))], payload=trace.as_dict())
    return EXIT_OK


def cmd_count(args) -> int:
    bound = _bound(args, analysis.DEFAULT_TABLE_BOUND)
    if args.patterns:
        target = [parse_pattern(tok) for tok in args.patterns.split(",")]
    else:
        target = (args.machine or "psb").split(",")
    table = analysis.sortable_table(target, args.n, bound=bound, jobs=_jobs(args))
    _emit(args, sorted(table.terms.items()), payload={"name": table.name, "terms": table.terms})
    return EXIT_OK


def cmd_fibers(args) -> int:
    if args.n is not None:
        c = preimage.census(args.n, bound=_bound(args, preimage.DEFAULT_CENSUS_BOUND), jobs=_jobs(args))
        _emit(args, sorted(c.counts.items()), payload={"n": c.n, "counts": c.counts})
        return EXIT_OK
    if args.perm is None:
        raise UsageError("fibers needs a permutation or --n")
    sigma = parse_perm(args.perm)
    if len(sigma) > _bound(args, preimage.DEFAULT_CENSUS_BOUND):
        raise UsageError("permutation too long for a brute-force fiber")
    fiber = sorted(preimage.fiber_bruteforce(sigma))
    _emit(args, [format_perm(p) for p in fiber])
    return EXIT_OK


def cmd_preimage(args) -> int:
    sigma = parse_perm(args.perm)
    _emit(args, [format_perm(p) for p in sorted(preimage.preimages(sigma))])
    return EXIT_OK


def cmd_basis(args) -> int:
    rho = parse_perm(args.perm)
    result = classes.preimage_basis(rho)
    if result.is_class:
        _emit(args, [format_perm(b) for b in sorted(result.basis, key=lambda b: (len(b), b))])
        return EXIT_OK
    rows: list = ["not a class"]
    payload: dict = {"class": False}
    if args.witness:
        w = classes.closure_witness(classes.preimage_member(rho), _bound(args, args.n))
        if w:
            rows.append(("witness", format_perm(w[0]), format_perm(w[1])))
            payload["witness"] = [format_perm(w[0]), format_perm(w[1])]
    _emit(args, rows, payload=payload)
    return EXIT_OK


def cmd_paths(args) -> int:
    if args.list:
        _emit(args, paths.gen_restricted(args.n))
    else:
        _emit(args, [(args.n, paths.count_restricted(args.n))], payload={"n": args.n, "count": paths.count_restricted(args.n)})
    return EXIT_OK


def cmd_series(args) -> int:
    coeffs = analysis.gf_expand(analysis.PARALLEL_SERIES, args.n)
    _emit(args, list(enumerate(coeffs)), payload=coeffs)
    return EXIT_OK


def cmd_conjecture(args) -> int:
    bound = _bound(args, analysis.DEFAULT_CONJECTURE_BOUND)
    rows = analysis.conjecture_report(args.n, bound=bound, jobs=_jobs(args))
    _emit(args, [(r.n, r.observed, r.conjectured, "match" if r.match else "mismatch") for r in rows],
          payload=[{"n": r.n, "observed": r.observed, "conjectured": r.conjectured, "match": r.match}
                   for r in rows])
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.list:
        _emit(args, list(verification.REGISTRY))
        return EXIT_OK
    ids = args.ids or verification.default_ids()
    unknown = [i for i in ids if i not in verification.REGISTRY]
    if unknown:
        raise UsageError(f"unknown check id: {', '.join(unknown)}")
    bound = args.n
    if args.limit is not None:
        bound = _bound(args, args.limit)
    reports = []
    for pid in ids:
        report = verification.verify_proposition(pid, bound, jobs=_jobs(args))
        reports.append(report)
        if args.format == "tsv":
            print(report.line(), flush=True)
            for note in report.notes:
                print(f"#\t{note}")
    if args.format == "json":
        print(json.dumps([r.__dict__ for r in reports]))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


COMMANDS = {
    "trace": cmd_trace,
    "count": cmd_count,
    "fibers": cmd_fibers,
    "preimage": cmd_preimage,
    "basis": cmd_basis,
    "paths": cmd_paths,
    "series": cmd_series,
    "conjecture": cmd_conjecture,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.jobs is not None and args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        return COMMANDS[args.command](args)
    except (UsageError, InvalidInputError, preimage.ResourceLimitError, ValueError) as exc:
        print(f"popbypass {args.command}: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())
