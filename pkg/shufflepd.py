#!/usr/bin/env python3
"""
ShufflePD - command-line entry point
Parse shuffle expressions, compute π and partial derivatives, build the
partial derivative automaton, and run the combinatorial analyses.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
1 domain error (parse, budget), 2 usage error.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from analysis.combinatorics import (asymptotics, asymptotics_csv, coefficients,
                                    enumerate_all, series_csv)
from analysis.sampler import STATS_HEADER, run_stats, stats_csv
from core.automaton import (build_apd, describe, equivalence_witness,
                            export_dot, export_json, nfa_member)
from core.derive import check_support, derivative_by_word, pi
from core.errors import ShufflePDError
from core.lang_oracle import as_word
from core.syntax import Expr, Op
from utils.config import load_config, setting
from utils.expr_parser import parse
from utils.logger import logger, run_logger, setup_logger

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def positive_float(text: str) -> float:
    value = float(text)
    if not value >= 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def read_expression(text: str) -> Expr:
    """Parse an -e argument; `@path` reads the expression from an existing file"""
    if text.startswith('@') and len(text) > 1 and Path(text[1:]).is_file():
        text = Path(text[1:]).read_text(encoding='utf-8').strip()
    return parse(text)


def read_word(text: str):
    """A word of concatenated symbols; `@` or the empty string is ε"""
    return as_word("" if text == "@" else text)


def show_word(word) -> str:
    return "".join(word) or "@"


def ast(e: Expr) -> str:
    """S-expression form of the tree"""
    if e.op is Op.SYM:
        return e.symbol
    if e.op is Op.EPS:
        return "eps"
    if e.op is Op.EMPTY:
        return "empty"
    children = " ".join(ast(c) for c in e.children)
    return f"({e.op.name.lower()} {children})"


def emit(text: str, out: Optional[str] = None):
    if out:
        Path(out).write_text(text + ("" if text.endswith("\n") else "\n"), encoding='utf-8')
        logger.info(f"✓ Wrote {out}")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_parse(args) -> int:
    e = read_expression(args.expr)
    emit("\n".join([
        f"expr: {e}",
        f"ast: {ast(e)}",
        f"size: {e.size}",
        f"width: {e.width}",
        f"nullable: {str(e.nullable).lower()}",
    ]))
    return EXIT_OK


def cmd_pi(args) -> int:
    support = pi(read_expression(args.expr))
    logger.info(f"|π| = {len(support)}")
    emit("\n".join(str(t) for t in support.sorted()))
    return EXIT_OK


def cmd_derive(args) -> int:
    derivs = derivative_by_word(read_expression(args.expr), read_word(args.word))
    emit("\n".join(str(t) for t in derivs.sorted()))
    return EXIT_OK


def cmd_nfa(args) -> int:
    nfa = build_apd(read_expression(args.expr))
    if args.format == 'dot':
        text = export_dot(nfa)
    elif args.format == 'json':
        text = export_json(nfa)
    else:
        text = describe(nfa)
    emit(text, args.out)
    return EXIT_OK


def cmd_member(args) -> int:
    e = read_expression(args.expr)
    emit("true" if nfa_member(build_apd(e), read_word(args.word)) else "false")
    return EXIT_OK


def cmd_equiv(args) -> int:
    witness = equivalence_witness(read_expression(args.expr), read_expression(args.expr2),
                                  args.maxlen)
    emit("true" if witness is None else f"false\nwitness: {show_word(witness)}")
    return EXIT_OK


def cmd_support(args) -> int:
    passed = check_support(read_expression(args.expr), args.maxlen)
    emit("true" if passed else "false")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    count = 0
    for e in enumerate_all(args.k, args.n):
        sys.stdout.write(f"{e}\n")
        count += 1
    logger.info(f"{count} expressions of size {args.n} over {args.k} symbols")
    return EXIT_OK


def cmd_series(args) -> int:
    table = coefficients(args.k, args.n)
    if args.csv:
        emit(series_csv(table))
    else:
        emit("\n".join(f"n={n} r={r} l={l} p={p}" for n, _, r, l, p in table.rows()))
    return EXIT_OK


def cmd_asympt(args) -> int:
    report = asymptotics(args.k, args.n)
    if args.csv:
        emit(asymptotics_csv([report]))
    else:
        emit("\n".join([
            f"rho: {report.rho!r}",
            f"rho_prime: {report.rho_prime!r}",
            f"avL: {report.avL!r}",
            f"avP_log2: {report.avP_log2!r}",
            f"ratio: {report.ratio!r}",
            f"per_letter: {report.per_letter!r}",
        ]))
    return EXIT_OK


def cmd_stats(args) -> int:
    result = run_stats(args.k, args.n, args.samples, args.seed, workers=args.workers)
    if args.csv:
        emit(stats_csv([result]))
    else:
        emit("\n".join(f"{key}: {value}" for key, value in zip(STATS_HEADER, result.to_csv_row())))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shufflepd",
        description="Partial derivative automata for regular expressions with shuffle")
    parser.add_argument("--config", help="Config file path (default: config/config.yaml)")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Diagnostic verbosity")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def with_expr(p):
        p.add_argument("-e", dest="expr", required=True, help="Expression (or @file)")
        return p

    def with_word(p):
        p.add_argument("-w", dest="word", required=True, help="Word, e.g. a1a2b ('@' = ε)")
        return p

    def with_size(p, k_type=positive_int, n_type=positive_int):
        p.add_argument("-k", type=k_type, required=True, help="Alphabet size")
        p.add_argument("-n", type=n_type, required=True, help="Expression size")
        return p

    with_expr(sub.add_parser("parse", help="Show tree, size, width, nullability")).set_defaults(func=cmd_parse)
    with_expr(sub.add_parser("pi", help="List π(e)")).set_defaults(func=cmd_pi)
    with_word(with_expr(sub.add_parser("derive", help="Partial derivatives by a word"))).set_defaults(func=cmd_derive)

    p = with_expr(sub.add_parser("nfa", help="Build the partial derivative automaton"))
    p.add_argument("--format", choices=["dot", "json", "text"], default="json")
    p.add_argument("--out", help="Write to file instead of stdout")
    p.set_defaults(func=cmd_nfa)

    with_word(with_expr(sub.add_parser("member", help="Word membership via A_pd"))).set_defaults(func=cmd_member)

    p = with_expr(sub.add_parser("equiv", help="Bounded equivalence of two expressions"))
    p.add_argument("-e2", dest="expr2", required=True, help="Second expression (or @file)")
    p.add_argument("--maxlen", type=non_negative_int, default=8, help="Maximum word length")
    p.set_defaults(func=cmd_equiv)

    p = with_expr(sub.add_parser("support", help="Check that π(e) is a support of e"))
    p.add_argument("--maxlen", type=non_negative_int, default=5, help="Maximum word length")
    p.set_defaults(func=cmd_support)

    with_size(sub.add_parser("enumerate", help="All expressions of size n")).set_defaults(func=cmd_enumerate)

    p = with_size(sub.add_parser("series", help="Exact coefficients r, l, p up to n"))
    p.add_argument("--csv", action="store_true", help="CSV output")
    p.set_defaults(func=cmd_series)

    p = with_size(sub.add_parser("asympt", help="Asymptotic averages at (k, n)"),
                  k_type=positive_float, n_type=positive_float)
    p.add_argument("--csv", action="store_true", help="CSV output")
    p.set_defaults(func=cmd_asympt)

    p = with_size(sub.add_parser("stats", help="Sampling experiment on |π| and A_pd size"))
    p.add_argument("--samples", type=positive_int, help="Number of samples")
    p.add_argument("--seed", default="0", help="Base seed")
    p.add_argument("--workers", type=positive_int, help="Worker processes")
    p.add_argument("--csv", action="store_true", help="CSV output")
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    if args.config and not Path(args.config).is_file():
        sys.stderr.write(f"shufflepd: config file not found: {args.config}\n")
        return EXIT_USAGE
    load_config(args.config)
    setup_logger(level=args.log_level or setting('logging', 'level'),
                 log_file=setting('logging', 'file'),
                 max_size_mb=setting('logging', 'max_size_mb'),
                 backup_count=setting('logging', 'backup_count'))
    run_logger.log_run(args.command)

    try:
        return args.func(args)
    except ShufflePDError as exc:
        logger.error(str(exc))
        return EXIT_DOMAIN
    except ValueError as exc:
        logger.error(f"Invalid input: {exc}")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
