"""Command-line entry point: ``tritrans <verb> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
or input errors.  Everything on stdout is ``key=value`` lines or a
canonical listing.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from . import tau as tau_mod
from .enumeration import (
    OracleTooLargeError,
    audit_measure_drops,
    branch_enumerate,
    enumerate_oracle,
)
from .generators import gen_cyclic_latin, gen_h15, gen_matching, gen_theorem1
from .h3io import H3ParseError, read, serialize
from .hypergraph import ALPHA, validate
from .search import SearchConfig, baseline, save_record, search

log = logging.getLogger("tritrans")


class UsageError(Exception):
    pass


def _num(x: float) -> str:
    return f"{x:.10g}"


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"alpha must lie in [0, 1], got {text}")
    return value


def _triple(text: str) -> tuple:
    try:
        sizes = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected p,q,r, got {text!r}") from None
    if len(sizes) != 3:
        raise argparse.ArgumentTypeError(f"expected p,q,r, got {text!r}")
    return sizes


def _vector(text: str) -> list:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected k1,k2,..., got {text!r}") from None


def _transversals(h, method):
    if method == "oracle":
        return enumerate_oracle(h)
    found, _ = branch_enumerate(h)
    return found


def cmd_count(args, out):
    h = read(args.file)
    out(f"minimal_transversals={len(_transversals(h, args.method))}")
    return 0


def cmd_enumerate(args, out):
    h = read(args.file)
    sys.stdout.write(_transversals(h, args.method).listing())
    return 0


def cmd_verify_branch(args, out):
    h = read(args.file)
    found, report = branch_enumerate(h, args.alpha)
    n, s = h.order, len(h.s_vertices)
    bound = tau_mod.leaf_bound(n, s)
    for line in report.lines():
        out(line)
    out(f"minimal_transversals={len(found)}")
    out(f"bound=1.8393^{{{n}-{s}}}={_num(bound)}")
    ok = report.leaf_count <= bound
    out(f"bound_ok={_bool(ok)}")
    out(f"mt_count_ok={_bool(len(found) <= bound)}")
    return 0 if ok else 1


def cmd_audit(args, out):
    h = read(args.file)
    audit = audit_measure_drops(h, args.alpha)
    for line in audit.lines():
        out(line)
    return 0 if audit.ok else 1


def cmd_tau(args, out):
    result = tau_mod.solve_tau(args.vector)
    out(f"tau={_num(result.tau)}")
    out(f"residual={result.residual:.3e}")
    return 0


def cmd_verify_lemma(args, out):
    taus = tau_mod.case_taus(args.alpha)
    out(f"alpha={_num(args.alpha)}")
    for name, result in taus._asdict().items():
        out(f"{name}={_num(result.tau)}")
    bounded = tau_mod.certify_mu_bounded(args.alpha, args.tau0)
    out(f"tau0={_num(args.tau0)}")
    out(f"bounded={_bool(bounded)}")
    return 0 if bounded else 1


def cmd_bounds(args, out):
    n = args.n
    naive_lower, naive_upper = tau_mod.naive_bounds(n)
    out(f"n={n}")
    out(f"extrapolated={_bool(n % 3 != 0)}")
    out(f"matching={_num(naive_lower)}")
    out(f"naive_upper={_num(naive_upper)}")
    out(f"theorem1_lower={_num(tau_mod.lower_bound(n))}")
    if n % 3 == 0:
        out(f"exact_lower={tau_mod.exact_lower(n)}")
    out(f"theorem_upper={_num(tau_mod.upper_bound(n))}")
    out(f"upper_base={_num(tau_mod.UPPER_BASE ** n)}")
    return 0


def _family(spec: str):
    name, _, arg = spec.partition(":")
    try:
        if name == "h15" and not arg:
            return gen_h15()
        if name == "matching":
            return gen_matching(int(arg))
        if name == "cyclic":
            return gen_cyclic_latin(int(arg))
        if name == "theorem1":
            return gen_theorem1(int(arg))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown family {spec!r}; use h15, matching:K, cyclic:K or theorem1:N")


def cmd_generate(args, out):
    h = _family(args.family)
    text = serialize(h)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_search(args, out):
    try:
        config = SearchConfig(args.parts, args.strategy, args.seed, args.iters,
                              args.time_budget, args.catalog)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    record = search(config)
    out(f"mt_count={record.mt_count}")
    out(f"baseline={baseline(config.part_sizes)}")
    out(f"strategy={record.strategy}")
    out(f"seed={record.seed}")
    out(f"iterations={record.iterations_used}")
    out(f"anomaly={_bool(record.anomaly)}")
    sys.stdout.write(record.hypergraph)
    if args.records:
        path = save_record(record, args.records)
        log.info("record stored at %s", path)
    return 1 if record.anomaly else 0


def cmd_validate(args, out):
    h = read(args.file)
    report = validate(h, strict_uniform=args.strict)
    out(f"valid={_bool(report.ok)}")
    for v in report.violations:
        out(f"violation={v}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tritrans",
        description="Minimal transversals of tripartite 3-uniform hypergraphs.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="diagnostics on stderr")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("count", help="count minimal transversals")
    p.add_argument("file")
    p.add_argument("--method", choices=("oracle", "branch"), default="oracle")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list minimal transversals")
    p.add_argument("file")
    p.add_argument("--method", choices=("oracle", "branch"), default="oracle")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-branch", help="branching tree report and leaf bound")
    p.add_argument("file")
    p.add_argument("--alpha", type=_fraction, default=ALPHA)
    p.set_defaults(func=cmd_verify_branch)

    p = sub.add_parser("audit", help="exact measure-drop audit of the branching tree")
    p.add_argument("file")
    p.add_argument("--alpha", type=_fraction, default=ALPHA)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("tau", help="solve sum tau^-k = 1")
    p.add_argument("--vector", type=_vector, required=True)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("verify-lemma", help="per-case branching numbers")
    p.add_argument("--alpha", type=float, default=tau_mod.DEFAULT_ALPHA)
    p.add_argument("--tau0", type=float, default=tau_mod.TAU0)
    p.set_defaults(func=cmd_verify_lemma)

    p = sub.add_parser("bounds", help="bound formulas at order n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("generate", help="write a constructed hypergraph")
    p.add_argument("--family", required=True, help="h15 | matching:K | cyclic:K | theorem1:N")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("search", help="look for instances with many minimal transversals")
    p.add_argument("--parts", type=_triple, required=True)
    p.add_argument("--strategy", choices=("exhaustive", "random", "hillclimb", "latin"),
                   required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--time-budget", type=float)
    p.add_argument("--catalog", help="Latin squares for the latin strategy")
    p.add_argument("--records", help="records directory to append the result to")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("validate", help="structural checks")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="require every edge to have arity 3")
    p.set_defaults(func=cmd_validate)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")

    def out(line):
        sys.stdout.write(line + "\n")

    try:
        return args.func(args, out)
    except (H3ParseError, OracleTooLargeError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
