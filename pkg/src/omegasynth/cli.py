"""Command-line interface.

Exit codes: 0 success (or equal), 1 verification failure, 2 usage error,
3 input error, 4 timeout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automata import AutomatonError, degeneralize
from .bench import format_summary, run_bench, summarize, write_csv
from .decompose import build_nfa
from .elimination import EliminationOrder
from .expr.simplify import DEFAULT_RULES
from .expr.syntax import ExprSyntaxError, parse_omega, to_text
from .expr.tree import EmptyOmega
from .formats import InputError, emit_hoa, emit_json, load
from .oracle import EquivBounds, bounded_equiv, omega_regex_to_nba
from .synthesis import SynthesisMethod, synthesize
from .timeouts import PhaseTimeout, default_timeout, time_limit

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INPUT, EXIT_TIMEOUT = 0, 1, 2, 3, 4


def _bounds(text: str) -> EquivBounds:
    try:
        p, c = (int(x) for x in text.split(","))
        return EquivBounds(p, c)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"bounds must be 'PREFIX,LOOP' with LOOP >= 1, got {text!r}"
        ) from None


def cmd_synth(args) -> int:
    nba = load(args.input)
    rules = DEFAULT_RULES if args.simplify else None
    with time_limit(args.timeout, "synthesis"):
        report = synthesize(nba, args.method, args.elim_order, rules)
    expr = report.simplified if args.simplify else report.expression
    metrics = report.simplified_metrics if args.simplify else report.metrics
    if args.format == "json":
        doc = {
            "file": Path(args.input).name,
            "method": report.method.value,
            "simplified": bool(args.simplify),
            "status": "ok",
            "states": report.states,
            "acc_sources": report.accepting_sources,
            "pairs": report.pair_count,
            **metrics.as_dict(),
            "elapsed_ms": round(report.elapsed * 1000, 3),
            "expression": to_text(expr),
            "unsimplified": {"expression": to_text(report.expression), **report.metrics.as_dict()},
        }
        if report.selection:
            doc["selection"] = report.selection
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    print(to_text(expr))
    if isinstance(expr, EmptyOmega):
        print("# %0^w-equivalent: empty language")
    print(f"# method={report.method.value} rpn={metrics.rpn} tllen={metrics.tllen} h={metrics.star_height}")
    print(f"# states={report.states} acc_sources={report.accepting_sources} pairs={report.pair_count} "
          f"elapsed_ms={report.elapsed * 1000:.3f}")
    if args.simplify:
        print(f"# unsimplified rpn={report.metrics.rpn}")
    return EXIT_OK


def cmd_verify(args) -> int:
    nba = load(args.input)
    if args.expr is not None:
        expr = parse_omega(args.expr)
    else:
        with time_limit(args.timeout, "synthesis"):
            expr = synthesize(nba, args.method, args.elim_order).expression
    with time_limit(args.timeout, "verification"):
        try:
            other = omega_regex_to_nba(expr, nba.alphabet)
        except KeyError as exc:
            raise InputError(f"expression uses {exc.args[0]}") from None
        result = bounded_equiv(nba, other, args.bounds)
    if result:
        print(f"equal ({result.checked} lassos, bounds {args.bounds.max_prefix},{args.bounds.max_loop})")
        return EXIT_OK
    print(f"counterexample: {result.counterexample}")
    return EXIT_MISMATCH


def cmd_bench(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in ("transition", "state"):
            print(f"error: unknown method {m!r}", file=sys.stderr)
            return EXIT_USAGE
    modes = {"both": (False, True), "yes": (True,), "no": (False,)}[args.simplify]
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise InputError(f"{corpus}: not a directory")
    records = run_bench(corpus, methods, modes, args.elim_order, args.timeout, args.jobs)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)
    if "state" in methods and "transition" in methods:
        out = sys.stdout if args.out else sys.stderr
        print(format_summary(summarize(records)), file=out, end="")
    return EXIT_OK


def cmd_triplet(args) -> int:
    nba = load(args.input)
    trip = build_nfa(nba, args.i, args.j, args.kind)
    if args.format == "json":
        doc = json.loads(emit_json(trip.nfa))
        doc["copy_state"] = trip.copy_state
        print(json.dumps(doc, indent=2))
    else:
        print(emit_hoa(trip.nfa, name=f"A_{args.i}{args.j},{trip.kind.value}"), end="")
    return EXIT_OK


def cmd_convert(args) -> int:
    nba = load(args.input)
    if args.degeneralize:
        nba = degeneralize(nba)
    print(emit_json(nba) if args.to == "json" else emit_hoa(nba), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omegasynth",
        description="Synthesize ω-regular expressions from Büchi automata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, method=True):
        p.add_argument("input", help="automaton file (.hoa or .json)")
        if method:
            p.add_argument("--method", choices=[m.value for m in SynthesisMethod], default="transition")
        p.add_argument("--elim-order", choices=[o.value for o in EliminationOrder], default="lowest")
        p.add_argument("--timeout", type=float, default=default_timeout(),
                       help="seconds per phase (default: $OMEGA_SYNTH_TIMEOUT_SECS or 120)")

    p = sub.add_parser("synth", help="synthesize an expression")
    common(p)
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check synthesis against the automaton on bounded lassos")
    common(p)
    p.add_argument("--bounds", type=_bounds, default=EquivBounds(4, 4), help="PREFIX,LOOP (default 4,4)")
    p.add_argument("--expr", help="check this expression instead of synthesizing one")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="benchmark a corpus directory")
    p.add_argument("corpus")
    p.add_argument("--methods", default="transition,state")
    p.add_argument("--simplify", choices=["both", "yes", "no"], default="both")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--elim-order", choices=[o.value for o in EliminationOrder], default="lowest")
    p.add_argument("--timeout", type=float, default=default_timeout())
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("triplet", help="dump one triplet NFA")
    p.add_argument("input")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("kind", choices=["all", "rej", "acc"])
    p.add_argument("--format", choices=["hoa", "json"], default="hoa")
    p.set_defaults(func=cmd_triplet)

    p = sub.add_parser("convert", help="re-emit an automaton")
    p.add_argument("input")
    p.add_argument("--to", choices=["hoa", "json"], default="hoa")
    p.add_argument("--degeneralize", action="store_true")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    try:
        return args.func(args)
    except PhaseTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (InputError, AutomatonError, ExprSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
