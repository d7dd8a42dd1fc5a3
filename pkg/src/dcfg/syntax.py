"""Text format for terms and grammar files.

Term expressions::

    "a0 b0"            rank-0 tuple (symbols separated by spaces, "" is empty)
    ("a0","","b1")     tuple literal
    T                  nonterminal
    x y   or   x . y   concatenation (binds tighter than @)
    x @2 y             intercalation into gap 2

Both operators associate to the left, so ``A @2 B C @1 D`` reads
``(A @2 (B C)) @1 D``.

Grammar files hold ``k:``, ``alphabet:``, ``start:`` and optionally
``nonterminals: X:1 Y:0`` (for nonterminals that have no rules), followed by
rule lines ``A:r -> expr``.  ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .grammar import Grammar, Nonterminal, Rule
from .terms import Concat, Intercal, NontermLeaf, Term, TupleLeaf
from .tuples import StringTuple

NAME = r"[A-Za-z_][A-Za-z0-9_]*(?:[\^/\\#][A-Za-z0-9_]+)*"

_TOKEN = re.compile(
    rf"""
    (?P<ws>\s+)
  | (?P<string>"[^"]*")
  | (?P<at>@\s*\d+)
  | (?P<name>{NAME})
  | (?P<punct>[().,])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r} at column {pos + 1}")
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


class _TermParser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self, offset: int = 0) -> _Token | None:
        idx = self.i + offset
        return self.tokens[idx] if idx < len(self.tokens) else None

    def take(self, kind: str, text: str | None = None) -> _Token:
        tok = self.peek()
        if tok is None or tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            got = "end of input" if tok is None else repr(tok.text)
            raise ParseError(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def parse(self) -> Term:
        t = self.intercalation()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek().text!r}")
        return t

    def intercalation(self) -> Term:
        t = self.concatenation()
        while (tok := self.peek()) is not None and tok.kind == "at":
            self.i += 1
            j = int(tok.text[1:].strip())
            if j < 1:
                raise ParseError("intercalation index must be positive")
            t = Intercal(j, t, self.concatenation())
        return t

    def starts_atom(self) -> bool:
        tok = self.peek()
        return tok is not None and (tok.kind in ("string", "name") or tok.text == "(")

    def concatenation(self) -> Term:
        t = self.atom()
        while True:
            tok = self.peek()
            if tok is not None and tok.text == ".":
                self.i += 1
                t = Concat(t, self.atom())
            elif self.starts_atom():
                t = Concat(t, self.atom())
            else:
                return t

    def atom(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok.kind == "string":
            self.i += 1
            return TupleLeaf(StringTuple.of(tok.text[1:-1]))
        if tok.kind == "name":
            self.i += 1
            return NontermLeaf(tok.text)
        if tok.text == "(":
            nxt, after = self.peek(1), self.peek(2)
            if nxt is not None and nxt.kind == "string" and after is not None and after.text == ",":
                return self.tuple_literal()
            self.i += 1
            t = self.intercalation()
            self.take("punct", ")")
            return t
        raise ParseError(f"unexpected {tok.text!r}")

    def tuple_literal(self) -> Term:
        self.take("punct", "(")
        comps = [self.take("string").text[1:-1]]
        while self.peek() is not None and self.peek().text == ",":
            self.i += 1
            comps.append(self.take("string").text[1:-1])
        self.take("punct", ")")
        return TupleLeaf(StringTuple.of(*comps))


def parse_term(src: str) -> Term:
    return _TermParser(src).parse()


def _format_tuple(u: StringTuple) -> str:
    if u.rank == 0:
        return '"' + " ".join(u[0]) + '"'
    return "(" + ",".join('"' + " ".join(c) + '"' for c in u) + ")"


def format_term(t: Term) -> str:
    """Canonical rendering with the fewest parentheses."""
    if isinstance(t, TupleLeaf):
        return _format_tuple(t.value)
    if isinstance(t, NontermLeaf):
        return t.name
    if isinstance(t, Concat):
        left = format_term(t.left)
        if isinstance(t.left, Intercal):
            left = f"({left})"
        right = format_term(t.right)
        if isinstance(t.right, (Concat, Intercal)):
            right = f"({right})"
        return f"{left} {right}"
    right = format_term(t.right)
    if isinstance(t.right, Intercal):
        right = f"({right})"
    return f"{format_term(t.left)} @{t.j} {right}"


def format_rule(rule: Rule, rank: int | None) -> str:
    lhs = rule.lhs if rank is None else f"{rule.lhs}:{rank}"
    return f"{lhs} -> {format_term(rule.rhs)}"


_RULE = re.compile(rf"^\s*({NAME})\s*:\s*(\d+)\s*->(.*)$")
_DECL = re.compile(r"^\s*(k|alphabet|start|nonterminals)\s*:(.*)$")
_NT_DECL = re.compile(rf"^({NAME}):(\d+)$")


def parse_grammar(text: str) -> Grammar:
    k = None
    alphabet: list[str] = []
    start = None
    ranks: dict[str, int] = {}
    rules: list[Rule] = []

    def declare(name: str, rank: int, lineno: int) -> None:
        if ranks.setdefault(name, rank) != rank:
            raise ParseError(f"{name} declared with ranks {ranks[name]} and {rank}", lineno)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if m := _RULE.match(line):
            name, rank, body = m.group(1), int(m.group(2)), m.group(3)
            declare(name, rank, lineno)
            try:
                rules.append(Rule(name, parse_term(body)))
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from None
        elif m := _DECL.match(line):
            key, value = m.group(1), m.group(2).strip()
            if key == "k":
                if not value.isdigit():
                    raise ParseError(f"k must be a non-negative integer, got {value!r}", lineno)
                k = int(value)
            elif key == "alphabet":
                alphabet += value.split()
            elif key == "start":
                if not re.fullmatch(NAME, value):
                    raise ParseError(f"bad start symbol {value!r}", lineno)
                start = value
            else:
                for item in value.split():
                    dm = _NT_DECL.match(item)
                    if dm is None:
                        raise ParseError(f"bad nonterminal declaration {item!r}", lineno)
                    declare(dm.group(1), int(dm.group(2)), lineno)
        else:
            raise ParseError(f"cannot parse {line!r}", lineno)
    if k is None:
        raise ParseError("missing 'k:' declaration")
    if start is None:
        raise ParseError("missing 'start:' declaration")
    return Grammar(
        k,
        tuple(alphabet),
        tuple(Nonterminal(n, r) for n, r in ranks.items()),
        tuple(rules),
        start,
    )


def _strip_comment(line: str) -> str:
    # '#' inside a quoted string or a nonterminal name (e.g. ``A#2``) is not a comment
    in_string = False
    for i, ch in enumerate(line):
        if ch == '"':
            in_string = not in_string
        elif ch == "#" and not in_string and (i == 0 or not re.match(r"[A-Za-z0-9_]", line[i - 1])):
            return line[:i]
    return line


def format_grammar(g: Grammar) -> str:
    lines = [f"k: {g.k}", f"alphabet: {' '.join(g.alphabet)}", f"start: {g.start}"]
    with_rules = {r.lhs for r in g.rules}
    bare = [n for n in g.nonterminals if n.name not in with_rules and not (n.name == g.start and n.rank == 0)]
    if bare:
        lines.append("nonterminals: " + " ".join(f"{n.name}:{n.rank}" for n in bare))
    ranks = g.ranks
    lines += [format_rule(r, ranks.get(r.lhs)) for r in g.rules]
    return "\n".join(lines) + "\n"


def read_grammar(path) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())


def write_grammar(g: Grammar, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_grammar(g))
