"""Command-line front end.

JSON goes to stdout and diagnostics to stderr.  Exit codes: 0 success, 1 bad
input or brute-force cap exceeded, 2 no formula for the shape, 3 the two
engines disagree (``--method auto``).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import formulas
from .quiver import Quiver, QuiverError, make_branch, make_line, parse_quiver, recognize_shape
from .structures import (
    DEFAULT_CAP,
    EnumerationCapError,
    Permutation,
    count_brute,
    enumerate_structures,
    is_quasi_hereditary,
)
from .validate import run_battery

# auto mode cross-checks the formula by brute force up to this size
AUTO_CROSSCHECK_N = 8


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def _emit(obj) -> None:
    print(json.dumps(obj))


def _branch_params(text: str) -> tuple[int, int, int]:
    try:
        s, t, u = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected s,t,u but got {text!r}") from None
    if min(s, t, u) < 0:
        raise argparse.ArgumentTypeError("branch parameters must be nonnegative")
    return s, t, u


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _load_quiver(args) -> Quiver:
    given = [x is not None for x in (args.line, args.branch, args.file)]
    if sum(given) != 1:
        raise CliError("give exactly one of --line, --branch, --file")
    if args.line is not None:
        return make_line(args.line)
    if args.branch is not None:
        return make_branch(*args.branch)
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {args.file}: {exc}") from None
    return parse_quiver(text)


def _describe(q: Quiver) -> dict:
    desc = recognize_shape(q).to_dict()
    desc.update(vertices=q.n, arrows=[list(a) for a in q.arrows])
    return desc


def _finish(report: dict, started: float, timing: bool) -> dict:
    if timing:
        report["elapsed_ms"] = round((time.perf_counter() - started) * 1000, 3)
    return report


def cmd_count(args) -> int:
    started = time.perf_counter()
    q = _load_quiver(args)
    engines: dict[str, str] = {}
    if args.method == "formula":
        try:
            engines["formula"] = str(formulas.count_formula(q))
        except formulas.UnsupportedShapeError as exc:
            raise CliError(str(exc), code=2) from None
    elif args.method == "brute":
        engines["brute"] = str(count_brute(q, cap=args.cap, jobs=args.jobs))
    else:
        failures = []
        try:
            engines["formula"] = str(formulas.count_formula(q))
        except formulas.UnsupportedShapeError as exc:
            failures.append(f"formula: {exc}")
        if "formula" not in engines or q.n <= AUTO_CROSSCHECK_N:
            try:
                engines["brute"] = str(count_brute(q, cap=args.cap, jobs=args.jobs))
            except EnumerationCapError as exc:
                failures.append(f"brute: {exc}")
        if not engines:
            raise CliError("; ".join(failures), code=2)
        if len(set(engines.values())) > 1:
            raise CliError(f"engines disagree: {engines}", code=3)
    report = {
        "quiver": _describe(q),
        "method": args.method,
        "count": next(iter(engines.values())),
        "engines": engines,
    }
    _emit(_finish(report, started, args.timing))
    return 0


def cmd_list(args) -> int:
    started = time.perf_counter()
    q = _load_quiver(args)
    records = enumerate_structures(q, cap=args.cap, jobs=args.jobs)
    report = {
        "quiver": _describe(q),
        "method": "brute",
        "count": str(len(records)),
        "classes": [r.to_dict() for r in records],
    }
    _emit(_finish(report, started, args.timing))
    return 0


def cmd_check(args) -> int:
    q = _load_quiver(args)
    try:
        sigma = Permutation.parse(args.perm)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if len(sigma) != q.n:
        raise CliError(f"permutation has {len(sigma)} entries, quiver has {q.n} vertices")
    cert = is_quasi_hereditary(q, sigma)
    _emit({"quiver": _describe(q), "permutation": list(sigma), **cert.to_dict()})
    return 0 if cert.verdict else 1


def cmd_cross_validate(args) -> int:
    if not 1 <= args.max_n <= 9:
        raise CliError("--max-n must be between 1 and 9")
    results = run_battery(args.max_n, seed=args.seed,
                          report=lambda r: print(r.line(), flush=True))
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else 1


def cmd_catalan(args) -> int:
    value = formulas.catalan(args.k)
    if args.json:
        _emit({"k": args.k, "catalan": str(value)})
    else:
        print(value)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhcount",
        description="Count quasi-hereditary structures on path algebras of tree quivers.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def quiver_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--line", type=_positive, metavar="N", help="linear quiver 1->...->N")
        p.add_argument("--branch", type=_branch_params, metavar="S,T,U",
                       help="branch quiver with in-arm S and out-arms T, U")
        p.add_argument("--file", metavar="PATH", help="quiver file (JSON or text form)")

    def brute_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                       help="largest n for brute force (default %(default)s, at most 11)")
        p.add_argument("--jobs", type=_positive, default=1, help="worker processes")
        p.add_argument("--timing", action="store_true",
                       help="add elapsed_ms to the report (output is then not reproducible)")

    p = sub.add_parser("count", help="count structures")
    quiver_flags(p)
    brute_flags(p)
    p.add_argument("--method", choices=("brute", "formula", "auto"), default="auto",
                   help="auto: formula if the shape is recognized, else brute force; "
                        f"also cross-checks by brute force when n <= {AUTO_CROSSCHECK_N}")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("list", help="list structures with class representatives")
    quiver_flags(p)
    brute_flags(p)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("check", help="certify one permutation")
    quiver_flags(p)
    p.add_argument("--perm", required=True, metavar="LIST",
                   help="images sigma(1),...,sigma(n), 1-based")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cross-validate", help="run the consistency battery")
    p.add_argument("--max-n", type=int, default=6, help="largest quiver size (<= 9)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_cross_validate)

    p = sub.add_parser("catalan", help="print a Catalan number")
    p.add_argument("k", type=int)
    p.add_argument("--json", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_catalan)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (QuiverError, EnumerationCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
