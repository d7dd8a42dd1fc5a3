"""Command-line front end.

Every command prints ``OK``, ``FAIL <reason>`` or ``ERROR <reason>`` on its
first line and exits with 0, 1 or 2 respectively.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .grammar import Grammar, emit_example, enumerate_language, equiv_up_to, is_linear, validate
from .normalization import PASSES, WrongStageError, run_pipeline
from .syntax import ParseError, format_grammar, read_grammar
from .terms import NotLinearError
from .tuples import StringTuple

MAX_LEN_LIMIT = 20


class Outcome(Exception):
    def __init__(self, status: int, head: str, detail: str = ""):
        self.status = status
        self.head = head
        self.detail = detail


def _fail(reason: str, detail: str = "") -> Outcome:
    return Outcome(1, f"FAIL {reason}", detail)


def _error(reason: str, detail: str = "") -> Outcome:
    return Outcome(2, f"ERROR {reason}", detail)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _error("usage", message)


def _load(path: str) -> Grammar:
    try:
        return read_grammar(path)
    except OSError as exc:
        raise _error("io", str(exc)) from None
    except ParseError as exc:
        raise _error("parse", f"{path}: {exc}") from None


def _load_valid(path: str) -> Grammar:
    g = _load(path)
    problems = validate(g)
    if problems:
        raise _fail(problems[0].code, "\n".join(f"{path}: {p}" for p in problems))
    return g


def _max_len(n: int) -> int:
    if n < 0:
        raise _error("usage", "--max-len must be non-negative")
    if n > MAX_LEN_LIMIT:
        raise _error("too-large", f"--max-len {n} exceeds the limit of {MAX_LEN_LIMIT}")
    return n


def _show(u: StringTuple) -> str:
    return str(u)


def _write(text: str, out: str | None, stdout) -> None:
    if out is None:
        stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _error("io", str(exc)) from None


def cmd_validate(args, stdout) -> None:
    g = _load(args.path)
    problems = validate(g)
    if problems:
        raise _fail(problems[0].code, "\n".join(str(p) for p in problems))
    print("OK", file=stdout)
    print(f"k: {g.k}", file=stdout)
    print(f"nonterminals: {len(g.nonterminals)}", file=stdout)
    print(f"rules: {len(g.rules)}", file=stdout)
    print(f"linear: {'yes' if is_linear(g) else 'no'}", file=stdout)


def cmd_enumerate(args, stdout) -> None:
    bound = _max_len(args.max_len)
    g = _load_valid(args.path)
    name = args.nonterminal or g.start
    if name not in g.ranks:
        raise _error("unknown-nonterminal", f"{name} is not declared in {args.path}")
    table = enumerate_language(g, bound)
    print("OK", file=stdout)
    for u in table.sorted(name):
        print(_show(u), file=stdout)


def cmd_normalize(args, stdout) -> None:
    g = _load_valid(args.path)
    if not is_linear(g):
        raise _fail("not-linear", "normalization needs a linear grammar")
    try:
        if args.pass_ == "all":
            run = run_pipeline(g)
        else:
            run = run_pipeline(g, upto=args.pass_, start=args.pass_)
    except WrongStageError as exc:
        raise _fail("wrong-stage", str(exc)) from None
    except NotLinearError as exc:
        raise _fail("not-linear", str(exc)) from None
    out = run.grammar
    delta = len(out.rules) - len(g.rules)
    head = f"OK rules {len(g.rules)} -> {len(out.rules)} ({delta:+d})"
    if args.out is None:
        print(head, file=stdout)
        stdout.write(format_grammar(out))
    else:
        _write(format_grammar(out), args.out, stdout)
        print(head, file=stdout)
    if args.trace:
        trace = "\n".join(run.trace()) + "\n"
        _write(trace, None if args.out is None else args.out + ".trace", stdout)


def cmd_equiv(args, stdout) -> None:
    bound = _max_len(args.max_len)
    g1, g2 = _load_valid(args.path1), _load_valid(args.path2)
    diff = equiv_up_to(g1, g2, bound)
    if diff is None:
        print("OK", file=stdout)
        return
    shown = _show(diff.witness) or "ε"
    where = args.path1 if diff.side == 1 else args.path2
    raise _fail(f"witness {shown}", f"only in {where}")


def cmd_example(args, stdout) -> None:
    if args.k < 1:
        raise _error("usage", "--k must be at least 1")
    g = emit_example(args.k)
    if args.out is None:
        print("OK", file=stdout)
        stdout.write(format_grammar(g))
    else:
        _write(format_grammar(g), args.out, stdout)
        print("OK", file=stdout)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dcfg", description="Displacement context-free grammar toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a grammar file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("enumerate", help="list derivable tuples up to a length")
    p.add_argument("path")
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--nonterminal")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("normalize", help="run normal-form passes on a linear grammar")
    p.add_argument("path")
    p.add_argument("--pass", dest="pass_", choices=[*PASSES, "all"], default="all")
    p.add_argument("-o", "--out")
    p.add_argument("--trace", action="store_true", help="also write OUT.trace")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("equiv", help="compare two start languages up to a length")
    p.add_argument("path1")
    p.add_argument("path2")
    p.add_argument("--max-len", type=int, default=8)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("example", help="write the example grammar for a given k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_example)
    return parser


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.func(args, stdout)
    except Outcome as outcome:
        print(outcome.head, file=stdout)
        if outcome.detail:
            print(outcome.detail, file=stderr)
        return outcome.status
    return 0


if __name__ == "__main__":
    sys.exit(main())
