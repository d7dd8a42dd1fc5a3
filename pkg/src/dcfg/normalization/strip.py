"""Pass 4: drop constants that carry no symbols from prefix and suffix rules.

Every tuple of an ε-free language ends in a unique number ``p`` of empty
components, so ``L(A)`` splits into the pieces ``L(A/p) . ("",)*p`` where
``A/p`` generates the tuples with those ``p`` components removed.  Rewriting
every rule over the ``A/p`` nonterminals removes all ``A -> B ("","",...)``
rules; the mirrored construction with ``A\\p`` removes ``A -> ("","",...) B``.
"""
from __future__ import annotations

from ..grammar import Grammar, Nonterminal, Rule, prune
from ..terms import Concat, Intercal, NontermLeaf, TupleLeaf
from ..tuples import (
    StringTuple,
    concat,
    leading_empty,
    strip_left,
    strip_right,
    trailing_empty,
)
from .derived import Derivation, PassResult, strip_name
from .shapes import NFStage, Shaped, classify, eliminate_unary, fresh_name, require_stage

EPS = StringTuple.epsilon(0)


def _ones(p: int) -> StringTuple:
    return StringTuple.epsilon(p)


class _Names:
    def __init__(self, g: Grammar, side: str):
        self.g = g
        self.side = side
        self.taken = set(g.ranks) | set(g.alphabet)
        self.names: dict[tuple[str, int], str] = {}
        self.ranks: dict[str, int] = {}
        self.derived: dict[str, Derivation] = {}

    def __call__(self, base: str, p: int) -> NontermLeaf:
        key = (base, p)
        if key not in self.names:
            name = strip_name(base, self.side, p)
            if name in self.taken:
                name = fresh_name(name, self.taken)
            self.taken.add(name)
            self.names[key] = name
            self.ranks[name] = self.g.ranks[base] - p
            self.derived[name] = Derivation(base, f"strip_{self.side}", p)
        return NontermLeaf(self.names[key])


def _right_rules(s: Shaped, rb: int, N: _Names, notes: list[str]) -> list[Rule]:
    if s.kind == "const":
        r = trailing_empty(s.u)
        return [Rule(N(s.lhs, r).name, TupleLeaf(strip_right(s.u, r)))]
    if s.kind == "pre":
        return [Rule(N(s.lhs, p).name, Concat(TupleLeaf(s.u), N(s.nt, p))) for p in range(rb + 1)]
    if s.kind == "post":
        if s.u.length == 0:
            q = s.u.rank
            return [Rule(N(s.lhs, p + q).name, N(s.nt, p)) for p in range(rb + 1)]
        r = trailing_empty(s.u)
        core = strip_right(s.u, r)
        return [
            Rule(N(s.lhs, r).name, Concat(N(s.nt, p), TupleLeaf(concat(_ones(p), core))))
            for p in range(rb + 1)
        ]
    # A -> B @j u with |u| = 1
    out = []
    r = trailing_empty(s.u)
    core = strip_right(s.u, r)
    for p in range(rb + 1):
        if s.j <= rb - p:
            out.append(Rule(N(s.lhs, p).name, Intercal(s.j, N(s.nt, p), TupleLeaf(s.u))))
            if s.j == rb - p:
                notes.append(f"{s.lhs}/{p}: gap {s.j} is the last gap of {s.nt}/{p}; kept as intercalation")
        else:
            # gap j lies among the p trailing empty components of B's value
            t = s.j - (rb - p)
            out.append(
                Rule(
                    N(s.lhs, r + rb - s.j).name,
                    Concat(N(s.nt, p), TupleLeaf(concat(_ones(t - 1), core))),
                )
            )
            notes.append(f"{s.lhs}/{r + rb - s.j}: gap {s.j} falls in the stripped tail of {s.nt}; rewritten as suffix")
    return out


def _left_rules(s: Shaped, rb: int, N: _Names, notes: list[str]) -> list[Rule]:
    if s.kind == "const":
        q = leading_empty(s.u)
        return [Rule(N(s.lhs, q).name, TupleLeaf(strip_left(s.u, q)))]
    if s.kind == "post":
        return [Rule(N(s.lhs, p).name, Concat(N(s.nt, p), TupleLeaf(s.u))) for p in range(rb + 1)]
    if s.kind == "pre":
        if s.u.length == 0:
            q = s.u.rank
            return [Rule(N(s.lhs, p + q).name, N(s.nt, p)) for p in range(rb + 1)]
        q = leading_empty(s.u)
        core = strip_left(s.u, q)
        return [
            Rule(N(s.lhs, q).name, Concat(TupleLeaf(concat(core, _ones(p))), N(s.nt, p)))
            for p in range(rb + 1)
        ]
    out = []
    q = leading_empty(s.u)
    core = strip_left(s.u, q)
    for p in range(rb + 1):
        if s.j > p:
            out.append(Rule(N(s.lhs, p).name, Intercal(s.j - p, N(s.nt, p), TupleLeaf(s.u))))
        else:
            # gap j lies among the p leading empty components of B's value
            out.append(
                Rule(
                    N(s.lhs, s.j - 1 + q).name,
                    Concat(TupleLeaf(concat(core, _ones(p - s.j))), N(s.nt, p)),
                )
            )
            notes.append(f"{s.lhs}\\{s.j - 1 + q}: gap {s.j} falls in the stripped head of {s.nt}; rewritten as prefix")
    return out


def _strip_side(g: Grammar, side: str) -> PassResult:
    N = _Names(g, side)
    start = N(g.start, 0).name
    make = _right_rules if side == "right" else _left_rules
    rules: list[Rule] = []
    notes: list[str] = []
    for rule in g.rules:
        s = classify(rule)
        if s.kind == "const" and s.u == EPS and s.lhs == g.start:
            rules.append(Rule(start, TupleLeaf(EPS)))
            continue
        if s.kind == "const" and s.u.is_empty():
            continue  # undefined under every strip; absent from valid input
        rb = g.ranks[s.nt] if s.nt is not None else 0
        rules += make(s, rb, N, notes)
    out = Grammar(
        g.k,
        g.alphabet,
        tuple(Nonterminal(n, r) for n, r in N.ranks.items()),
        tuple(dict.fromkeys(rules)),
        start,
    )
    full = eliminate_unary(out)
    return PassResult(prune(full), g, derived=N.derived, notes=list(dict.fromkeys(notes)), unpruned=full)


def run_pass4(g: Grammar) -> tuple[PassResult, PassResult]:
    """Right strip, then left strip on its output."""
    require_stage(g, NFStage.NO_EPS_INTERCAL_ARG)
    right = _strip_side(g, "right")
    left = _strip_side(right.grammar, "left")
    return right, left


def pass4_strip(g: Grammar) -> Grammar:
    return run_pass4(g)[1].grammar
