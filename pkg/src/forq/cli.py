"""Command-line front end: ``forq check``, ``forq bench`` (and a hidden ``selftest``).

Exit codes: 0 included, 1 not included, 2 parse or usage error, 3 timeout.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .automaton import AlphabetMismatch
from .baformat import load_pair
from .bench import ManifestError, load_manifest, run_bench, survival_points, write_csv, write_survival
from .engine import EngineOptions, Timeout, decide_inclusion

EXIT_INCLUDED, EXIT_NOT_INCLUDED, EXIT_ERROR, EXIT_TIMEOUT = 0, 1, 2, 3


def _options(args) -> EngineOptions:
    return EngineOptions(prune=not args.no_prune, picky=args.picky,
                         reduce_accepting=not args.no_acc_reduce, timeout_ms=args.timeout_ms)


def format_lasso(symbols: Sequence[str], u, v) -> str:
    stem = " ".join(symbols[x] for x in u)
    period = " ".join(symbols[x] for x in v)
    return f"{stem} ({period})^w" if stem else f"({period})^w"


def cmd_check(args) -> int:
    try:
        a, b = load_pair(args.a, args.b, strict=args.strict)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        result = decide_inclusion(a, b, _options(args))
    except Timeout:
        print(f"timeout after {args.timeout_ms} ms", file=sys.stderr)
        return EXIT_TIMEOUT
    except AlphabetMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(result.verdict.value)
    if result.witness is not None:
        print("counterexample: " + format_lasso(a.alphabet.symbols, *result.witness))
    if args.stats:
        st = result.stats
        print(f"queries={st.queries}")
        print(f"stem_basis={st.stem_basis}")
        print(f"period_basis={st.period_basis}")
        print(f"period_fixpoints={st.period_fixpoints}")
        print(f"time_ms={st.elapsed_ms:.3f}")
    return EXIT_INCLUDED if result.included else EXIT_NOT_INCLUDED


def cmd_bench(args) -> int:
    try:
        pairs = load_manifest(args.source)
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    records = run_bench(pairs, _options(args), jobs=args.jobs)
    write_csv(records, args.csv or sys.stdout)
    if args.survival:
        write_survival(records, args.survival)
    for r in records:
        if r.status == "error":
            print(f"{r.name}: {r.message}", file=sys.stderr)
    solved = len(survival_points(records))
    print(f"solved {solved}/{len(records)}", file=sys.stderr)
    return EXIT_INCLUDED


def cmd_selftest(args) -> int:
    from .oracle import oracle_inclusion, random_pair

    disagreements = 0
    for seed in range(args.seeds):
        a, b = random_pair(seed)
        expected = oracle_inclusion(a, b)
        got = decide_inclusion(a, b).included
        if expected != got:
            disagreements += 1
            print(f"seed {seed}: oracle={expected} engine={got}")
    print(f"{args.seeds} pairs, {disagreements} disagreements")
    return EXIT_INCLUDED if disagreements == 0 else EXIT_NOT_INCLUDED


def _engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--picky", action="store_true", help="skip periods v with Tgt(wv) not below Tgt(w)")
    p.add_argument("--no-prune", action="store_true", help="keep subsumed words in the bases")
    p.add_argument("--no-acc-reduce", action="store_true",
                   help="keep accepting states of A outside non-trivial SCCs")
    p.add_argument("--timeout-ms", type=float, default=None, metavar="N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="forq", description="Büchi automata language inclusion.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{check,bench}")

    check = sub.add_parser("check", help="decide L(A) <= L(B)")
    check.add_argument("a", metavar="A.ba")
    check.add_argument("b", metavar="B.ba")
    _engine_flags(check)
    check.add_argument("--stats", action="store_true", help="print key=value statistics")
    check.add_argument("--strict", action="store_true",
                       help="reject files without initial or accepting lines")
    check.set_defaults(func=cmd_check)

    bench = sub.add_parser("bench", help="run a manifest or directory of pairs")
    bench.add_argument("source", metavar="dir-or-manifest")
    bench.add_argument("--csv", metavar="out.csv")
    bench.add_argument("--survival", metavar="out.dat")
    bench.add_argument("--jobs", type=int, default=1, metavar="N")
    _engine_flags(bench)
    bench.set_defaults(func=cmd_bench)

    selftest = sub.add_parser("selftest")
    selftest.add_argument("--seeds", type=int, default=200)
    selftest.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_INCLUDED
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
