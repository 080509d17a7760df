"""Command-line interface: ``taylorlam <subcommand> ...``.

Exit status: 0 for success or Yes, 2 for Unknown or exhausted fuel,
3 for No or a failing law, 1 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from taylorlam._core import ParseError, free_name_order
from taylorlam.analysis import Outcome, Property, analyze, check_conservation, oracle
from taylorlam.expansion import Budget, iter_rigid_expand, iter_taylor_expand
from taylorlam.laws import LAWS, check_law
from taylorlam.resource import (
    ResStrategyKind, Sum, parse_sum, render_resource, render_sum, res_steps,
)
from taylorlam.rigid import (
    ZERO, is_r_normal, parse_rigid, render_rigid, rigid_head_decompose,
    rigid_head_step, rigid_left_parallel_step, rigid_steps,
)
from taylorlam.syntax import (
    StrategyKind, classify, head_redex_path, head_step, is_beta_nf,
    left_parallel_step, leftmost_step, parse, render,
)

EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN, EXIT_NO = 0, 1, 2, 3
_EXIT_FOR = {Outcome.YES: EXIT_OK, Outcome.UNKNOWN: EXIT_UNKNOWN, Outcome.NO: EXIT_NO}

LAMBDA_STRATEGIES = [k.value for k in StrategyKind]
RIGID_STRATEGIES = ["r-" + k for k in
                    ("beta", "head", "left", "non-erasing", "erasing", "sigma1", "epsilon-ne")]
MULTISET_STRATEGIES = ["d-" + k for k in
                       ("beta", "partial", "non-erasing", "erasing", "sigma1", "epsilon-ne")]
_D_KIND = {"d-beta": ResStrategyKind.PARTIAL, "d-partial": ResStrategyKind.PARTIAL,
           "d-non-erasing": ResStrategyKind.PARTIAL_NON_ERASING,
           "d-erasing": ResStrategyKind.PARTIAL_ERASING,
           "d-sigma1": ResStrategyKind.PARTIAL_SIGMA1,
           "d-epsilon-ne": ResStrategyKind.EPSILON_NE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 means Unknown here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--trace", action="store_true", help="show intermediate steps")
    common.add_argument("--max-size", type=_positive, default=10)
    common.add_argument("--max-count", type=_positive, default=200)
    common.add_argument("--fuel", type=_positive, default=None,
                        help="reduction steps (default 100 for reduce, 200 otherwise)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cases", type=_positive, default=200)
    common.add_argument("--file", metavar="PATH", help="read the term from PATH")

    def with_term(p, calculus=True):
        p.add_argument("term", nargs="?", help="term text (or use --file)")
        if calculus:
            p.add_argument("--calculus", choices=["auto", "lambda", "rigid", "resource"],
                           default="auto")

    parser = _Parser(prog="taylorlam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("parse", parents=[common], help="parse and describe a term")
    with_term(p)
    p = sub.add_parser("render", parents=[common], help="print a term canonically")
    with_term(p)

    p = sub.add_parser("reduce", parents=[common], help="reduce under a strategy")
    with_term(p, calculus=False)
    p.add_argument("--strategy", default="beta",
                   choices=LAMBDA_STRATEGIES + RIGID_STRATEGIES + MULTISET_STRATEGIES)

    p = sub.add_parser("expand", parents=[common], help="enumerate approximants")
    with_term(p, calculus=False)
    p.add_argument("--kind", choices=["rigid", "taylor"], default="taylor")

    p = sub.add_parser("analyze", parents=[common], help="decide a normalization property")
    with_term(p, calculus=False)
    p.add_argument("--property", required=True,
                   choices=[q.value for q in Property] + ["conservation"])
    p.add_argument("--oracle", action="store_true",
                   help="reduce the lambda term itself instead of searching approximants")
    p.add_argument("--no-guided", action="store_true",
                   help="search the enumeration only")

    p = sub.add_parser("laws", parents=[common], help="run the randomized law harness")
    p.add_argument("--law", action="append", choices=list(LAWS) + ["all"],
                   help="law to check (repeatable; default all)")
    p.add_argument("--size-bound", type=_positive, default=None)
    return parser


# --- term input -----------------------------------------------------------------

def _term_text(args) -> str:
    if args.file and args.term:
        raise UsageError("give the term inline or with --file, not both")
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                return fh.read().strip()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}")
    if args.term is None:
        raise UsageError("missing term")
    return args.term


def _read(text: str, calculus: str):
    """Parse ``text``; ``auto`` tries lambda, then rigid, then multiset sums."""
    if calculus == "lambda":
        return "lambda", parse(text)
    if calculus == "rigid":
        return "rigid", parse_rigid(text)
    if calculus == "resource":
        return "resource", _as_single(parse_sum(text))
    first = None
    for name, reader in (("lambda", parse), ("rigid", parse_rigid),
                         ("resource", lambda s: _as_single(parse_sum(s)))):
        try:
            return name, reader(text)
        except ParseError as exc:
            first = first or exc
    raise first


def _as_single(sigma: Sum):
    items = sigma.items()
    if len(items) == 1 and items[0][1] == 1:
        return items[0][0]
    return sigma


def _show(kind, e) -> str:
    if kind == "lambda":
        return render(e)
    if kind == "rigid":
        return render_rigid(e)
    return render_sum(e) if isinstance(e, Sum) else render_resource(e)


# --- subcommands ------------------------------------------------------------------

def _cmd_parse(args, out):
    kind, e = _read(_term_text(args), args.calculus)
    doc = {"calculus": kind, "term": _show(kind, e)}
    if not isinstance(e, Sum) and e is not ZERO:
        doc["size"] = e.size if not isinstance(e, tuple) else sum(a.size for a in e)
        doc["free"] = list(free_name_order(e))
    if kind == "lambda":
        c = classify(e)
        doc["classification"] = {
            "beta_normal": c.is_beta_nf, "head_normal": c.is_head_nf,
            "non_erasing_normal": c.is_non_erasing_nf, "lambda_I": c.is_lambda_I,
            "closed": c.is_closed}
    if args.json:
        out.append(doc)
    else:
        for key, value in doc.items():
            if isinstance(value, dict):
                value = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in value.items())
            elif isinstance(value, list):
                value = " ".join(value) or "-"
            out.append(f"{key}: {value}")
    return EXIT_OK


def _cmd_render(args, out):
    kind, e = _read(_term_text(args), args.calculus)
    text = _show(kind, e)
    out.append({"calculus": kind, "term": text} if args.json else text)
    return EXIT_OK


def _stepper(strategy: str):
    """Return ``(calculus, step)`` where ``step`` gives the next term or ``None``."""
    if strategy in LAMBDA_STRATEGIES:
        kind = StrategyKind(strategy)
        if kind is StrategyKind.HEAD:
            return "lambda", lambda t: None if head_redex_path(t) is None else head_step(t)
        if kind is StrategyKind.LEFT:
            return "lambda", lambda t: None if is_beta_nf(t) else left_parallel_step(t)
        return "lambda", lambda t: leftmost_step(t, kind)
    if strategy in RIGID_STRATEGIES:
        name = strategy[2:]
        if name == "head":
            return "rigid", lambda e: (rigid_head_step(e) if e is not ZERO
                                       and rigid_head_decompose(e).is_redex else None)
        if name == "left":
            return "rigid", lambda e: (None if e is ZERO or is_r_normal(e)
                                       else rigid_left_parallel_step(e))

        def rigid_step(e):
            found = rigid_steps(e, name) if e is not ZERO else []
            return found[0][1] if found else None
        return "rigid", rigid_step
    res_kind = _D_KIND[strategy]

    def sum_step(sigma):
        # leftmost redex of the first reducible summand, one copy at a time
        if not isinstance(sigma, Sum):
            sigma = Sum.of(sigma)
        for t in sigma.support():
            found = res_steps(t, res_kind)
            if found:
                return sigma.replace_one(t, found[0][2])
        return None
    return "resource", sum_step


def _cmd_reduce(args, out):
    calculus, step = _stepper(args.strategy)
    _, cur = _read(_term_text(args), calculus)
    fuel = args.fuel or 100
    show = (lambda e: _show(calculus, e))
    trace = [show(cur)]
    taken = 0
    normal = False
    while True:
        nxt = step(cur)
        if nxt is None:
            normal = True
            break
        if taken == fuel:
            break
        cur = nxt
        taken += 1
        if args.trace:
            trace.append(show(cur))
    status = "normal form" if normal else "fuel exhausted"
    if args.json:
        doc = {"strategy": args.strategy, "result": show(cur), "steps": taken,
               "status": status}
        if args.trace:
            doc["trace"] = trace
        out.append(doc)
    else:
        if args.trace:
            width = len(str(len(trace) - 1))
            out.extend(f"{i:>{width}}: {t}" for i, t in enumerate(trace))
        out.append(f"{status} after {taken} steps: {show(cur)}")
    return EXIT_OK if normal else EXIT_UNKNOWN


def _cmd_expand(args, out):
    m = parse(_term_text(args))
    if args.kind == "rigid":
        gen, show = iter_rigid_expand(m, args.max_size), render_rigid
    else:
        gen, show = iter_taylor_expand(m, args.max_size), render_resource
    items = list(itertools.islice(gen, args.max_count + 1))
    truncated = len(items) > args.max_count
    items = [show(a) for a in items[:args.max_count]]
    if args.json:
        out.append({"kind": args.kind, "term": render(m), "max_size": args.max_size,
                    "max_count": args.max_count, "elements": items,
                    "truncated": truncated})
    else:
        out.extend(items)
        if truncated:
            out.append(f"... truncated at {args.max_count} elements")
    return EXIT_OK


def _cmd_analyze(args, out):
    m = parse(_term_text(args))
    fuel = args.fuel or 200
    if args.property == "conservation":
        verdict = check_conservation(m, fuel)
    elif args.oracle:
        verdict = oracle(m, args.property, fuel)
    else:
        budget = Budget(args.max_size, args.max_count, fuel)
        verdict = analyze(m, args.property, budget, guided=not args.no_guided)
    if args.json:
        doc = verdict.to_dict()
        if not args.trace:
            doc.pop("trace")
        out.append(doc)
    else:
        doc = verdict.to_dict()
        out.append(f"{doc['property']}: {doc['outcome']}")
        if doc["witness"] is not None:
            out.append(f"witness ({doc['witness_kind']}): {doc['witness']}")
        if doc["reason"]:
            out.append(f"reason: {doc['reason']}")
        if args.trace:
            out.extend(f"  {line}" for line in doc["trace"])
    return _EXIT_FOR[verdict.outcome]


def _cmd_laws(args, out):
    names = args.law or ["all"]
    if "all" in names:
        names = list(LAWS)
    reports = [check_law(n, args.cases, args.seed, args.size_bound) for n in names]
    passed = all(r.passed for r in reports)
    if args.json:
        out.append({"passed": passed, "reports": [r.to_dict() for r in reports]})
    else:
        for r in reports:
            out.append(r.summary())
            out.extend(f"  {line}" for line in r.details)
            for f in r.failures:
                case = f["case"] if isinstance(f["case"], str) else " | ".join(f["case"])
                out.append(f"  counterexample: {case}: {f['message']}")
    return EXIT_OK if passed else EXIT_NO


_COMMANDS = {"parse": _cmd_parse, "render": _cmd_render, "reduce": _cmd_reduce,
             "expand": _cmd_expand, "analyze": _cmd_analyze, "laws": _cmd_laws}


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    """Run one invocation; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    want_json = "--json" in argv
    out: list = []
    try:
        args = build_parser().parse_args(argv)
        code = _COMMANDS[args.command](args, out)
    except (UsageError, ParseError, ValueError) as exc:
        if want_json:
            print(json.dumps({"error": str(exc)}, sort_keys=True), file=stdout)
        else:
            print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    if want_json:
        print(json.dumps(out[0], sort_keys=True), file=stdout)
    else:
        for line in out:
            print(line, file=stdout)
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
