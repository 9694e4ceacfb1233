"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 I/O error.  Reports go to stdout or ``--out``; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import Algebra, AlgebraError, format_element, load_algebra
from .builtins import NAMES, builtin_algebra

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _IOFailure(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot write {out}: {exc}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _IOFailure(f"cannot read {path}: {exc}") from None


def table_cells(alg: Algebra) -> list[list[str]]:
    return [[format_element(x) for x in row] for row in alg.table()]


def render_table(alg: Algebra, fmt: str) -> str:
    cells = table_cells(alg)
    if fmt == "json":
        return _dump({"algebra": alg.name, "labels": list(alg.labels), "table": cells})
    width = max(len(c) for row in cells for c in row)
    width = max(width, max(len(lab) for lab in alg.labels))
    lines = ["*".rjust(width) + " | " + " ".join(lab.rjust(width) for lab in alg.labels)]
    lines.append("-" * len(lines[0]))
    for lab, row in zip(alg.labels, cells):
        lines.append(lab.rjust(width) + " | " + " ".join(c.rjust(width) for c in row))
    return "\n".join(lines) + "\n"


# subcommands


def cmd_tables(args) -> int:
    _emit(render_table(builtin_algebra(args.algebra), args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .suites import run_suite, suite_document

    checks = run_suite(args.suite)
    _emit(suite_document(args.suite, checks, timing=not args.no_timing), args.out)
    missed = [c for c in checks if not c.met]
    for c in missed:
        print(f"expectation not met: {c.name} expected {c.expected}, got {c.report.status}", file=sys.stderr)
    return EXIT_FAIL if missed else EXIT_OK


def cmd_eval(args) -> int:
    from .expr import ExprSyntaxError, UnknownSymbolError, evaluate, parse_expression

    alg = builtin_algebra(args.algebra)
    notes: list[str] = []
    try:
        tree = parse_expression(args.expression, notes)
        value = evaluate(tree, alg)
    except (ExprSyntaxError, UnknownSymbolError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for n in notes:
        print(f"warning: {n}", file=sys.stderr)
    _emit(format_element(value) + "\n", args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    from .susy import SUPERPOTENTIALS, spectral_pairing_report

    try:
        rep = spectral_pairing_report(SUPERPOTENTIALS[args.superpotential], tuple(args.domain), args.grid,
                                      args.levels, args.tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(rep.to_json(timing=not args.no_timing), args.out)
    return EXIT_OK if rep.status == "pass" else EXIT_FAIL


def cmd_export(args) -> int:
    _emit(builtin_algebra(args.algebra).to_json(), args.path)
    return EXIT_OK


def cmd_load(args) -> int:
    try:
        alg = load_algebra(_read(args.path))
    except AlgebraError as exc:
        print(f"error: {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(render_table(alg, args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nonassoc", description="Exact nonassociative algebra toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", help="print a multiplication table")
    t.add_argument("algebra", choices=NAMES)
    t.add_argument("--format", choices=("text", "json"), default="text")
    t.add_argument("--out")
    t.set_defaults(func=cmd_tables)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=("core", "example1", "example2", "example3", "appendixA", "all"),
                   default="all")
    v.add_argument("--no-timing", action="store_true", help="omit elapsed times for byte-stable output")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate an expression")
    e.add_argument("--algebra", choices=NAMES, default="octonion")
    e.add_argument("expression")
    e.add_argument("--out")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("spectrum", help="partner-potential spectral pairing")
    s.add_argument("--superpotential", choices=("quadratic", "linear", "cubic", "zero"), default="quadratic")
    s.add_argument("--domain", nargs=2, type=float, default=[-10.0, 10.0], metavar=("A", "B"))
    s.add_argument("--grid", type=int, default=2000)
    s.add_argument("--levels", type=int, default=6)
    s.add_argument("--tol", type=float, default=1e-3)
    s.add_argument("--no-timing", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_spectrum)

    x = sub.add_parser("export-algebra", help="write a built-in algebra as JSON")
    x.add_argument("algebra", choices=NAMES)
    x.add_argument("path")
    x.set_defaults(func=cmd_export)

    lo = sub.add_parser("load-algebra", help="load an algebra JSON file and print its table")
    lo.add_argument("path")
    lo.add_argument("--format", choices=("text", "json"), default="json")
    lo.add_argument("--out")
    lo.set_defaults(func=cmd_load)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
