"""Grammars, validation, the example family and the bounded enumeration oracle."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .terms import (
    Concat,
    Intercal,
    NontermLeaf,
    Term,
    TupleLeaf,
    check_k_correct,
    compile_term,
    leaves,
    nonterminals,
    rank_of,
    term_length,
)
from .tuples import StringTuple


class GrammarError(ValueError):
    """Raised when an operation needs a valid grammar and gets something else."""


@dataclass(frozen=True)
class Nonterminal:
    name: str
    rank: int


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: Term


@dataclass(frozen=True)
class Grammar:
    """A k-DCFG.  Nonterminals are kept in a canonical order: start first,
    then in order of first appearance as a rule's left-hand side, then the rest.
    """

    k: int
    alphabet: tuple[str, ...]
    nonterminals: tuple[Nonterminal, ...]
    rules: tuple[Rule, ...]
    start: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", tuple(self.rules))
        nts = list(self.nonterminals)
        if self.start not in {n.name for n in nts}:
            nts.insert(0, Nonterminal(self.start, 0))
        order = [self.start] + [r.lhs for r in self.rules] + [n.name for n in nts]
        position = {}
        for name in order:
            position.setdefault(name, len(position))
        nts.sort(key=lambda n: position[n.name])
        object.__setattr__(self, "nonterminals", tuple(nts))

    @classmethod
    def build(
        cls,
        k: int,
        alphabet: Iterable[str],
        ranks: Mapping[str, int],
        rules: Iterable[Rule],
        start: str,
    ) -> "Grammar":
        return cls(
            k,
            tuple(alphabet),
            tuple(Nonterminal(n, r) for n, r in ranks.items()),
            tuple(rules),
            start,
        )

    @cached_property
    def ranks(self) -> dict[str, int]:
        return {n.name: n.rank for n in self.nonterminals}

    def rules_for(self, name: str) -> list[Rule]:
        return [r for r in self.rules if r.lhs == name]

    def replace(self, **changes) -> "Grammar":
        fields = dict(
            k=self.k,
            alphabet=self.alphabet,
            nonterminals=self.nonterminals,
            rules=self.rules,
            start=self.start,
        )
        fields.update(changes)
        return Grammar(**fields)

    def __str__(self) -> str:
        from .syntax import format_grammar

        return format_grammar(self)


@dataclass(frozen=True)
class GrammarViolation:
    code: str
    message: str
    rule_index: int | None = None

    def __str__(self) -> str:
        where = "" if self.rule_index is None else f"rule {self.rule_index}: "
        return f"{self.code}: {where}{self.message}"


def validate(g: Grammar) -> list[GrammarViolation]:
    """All violated grammar conditions; an empty list means the grammar is valid."""
    out: list[GrammarViolation] = []
    ranks = g.ranks
    if g.k < 0:
        out.append(GrammarViolation("bad-k", f"k must be non-negative, got {g.k}"))
    if ranks[g.start] != 0:
        out.append(GrammarViolation("start-rank", f"start symbol {g.start} has rank {ranks[g.start]}, expected 0"))
    alphabet = set(g.alphabet)
    for name in sorted(alphabet & set(ranks)):
        out.append(GrammarViolation("name-clash", f"{name} is both a symbol and a nonterminal"))
    for n in g.nonterminals:
        if not 0 <= n.rank <= g.k:
            out.append(GrammarViolation("rank-exceeds-k", f"{n.name} has rank {n.rank} outside 0..{g.k}"))

    for idx, rule in enumerate(g.rules):
        if rule.lhs not in ranks:
            out.append(GrammarViolation("unknown-nonterminal", f"undeclared left-hand side {rule.lhs}", idx))
            continue
        unknown = [n for n in nonterminals(rule.rhs) if n not in ranks]
        for name in dict.fromkeys(unknown):
            out.append(GrammarViolation("unknown-nonterminal", f"{name} is not declared", idx))
        for lf in leaves(rule.rhs):
            for comp in lf.value:
                for sym in comp:
                    if sym not in alphabet:
                        out.append(GrammarViolation("unknown-symbol", f"{sym!r} is not in the alphabet", idx))
        if unknown:
            continue
        violation = check_k_correct(rule.rhs, g.k, ranks)
        if violation is not None:
            out.append(GrammarViolation("not-k-correct", str(violation), idx))
            continue
        rhs_rank = rank_of(rule.rhs, ranks)
        if rhs_rank != ranks[rule.lhs]:
            out.append(
                GrammarViolation(
                    "rank-mismatch",
                    f"{rule.lhs} has rank {ranks[rule.lhs]} but its right-hand side has rank {rhs_rank}",
                    idx,
                )
            )
    return out


def require_valid(g: Grammar) -> None:
    problems = validate(g)
    if problems:
        raise GrammarError("; ".join(map(str, problems)))


def is_linear(g: Grammar) -> bool:
    return all(len(nonterminals(r.rhs)) <= 1 for r in g.rules)


def emit_example(k: int) -> Grammar:
    """The grammar for ``{a0^m b0^m a1^m b1^m ... ak^m bk^m}``.

    The start rule closes all ``k`` gaps of ``T``, one ``@1 ""`` per gap.
    """
    if k < 1:
        raise ValueError("the example family starts at k = 1")
    sym = lambda c, i: f"{c}{i}"  # noqa: E731
    body: Term = NontermLeaf("T")
    for i in range(1, k + 1):
        body = Intercal(i, body, TupleLeaf(StringTuple(((sym("b", i - 1),), (sym("a", i),)))))
    body = Concat(Concat(TupleLeaf(StringTuple((("a0",),))), body), TupleLeaf(StringTuple(((sym("b", k),),))))
    start: Term = NontermLeaf("T")
    for _ in range(k):
        start = Intercal(1, start, TupleLeaf(StringTuple.epsilon(0)))
    rules = [
        Rule("S", start),
        Rule("T", body),
        Rule("T", TupleLeaf(StringTuple.epsilon(k))),
    ]
    alphabet = [sym(c, i) for i in range(k + 1) for c in "ab"]
    return Grammar.build(k, alphabet, {"S": 0, "T": k}, rules, "S")


def example_word(k: int, m: int) -> StringTuple:
    """``a0^m b0^m ... ak^m bk^m`` as a rank-0 tuple."""
    word: list[str] = []
    for i in range(k + 1):
        word += [f"a{i}"] * m + [f"b{i}"] * m
    return StringTuple((tuple(word),))


@dataclass(frozen=True)
class LanguageTable:
    """Every derivable tuple of length at most ``bound``, per nonterminal.

    ``iterations`` counts the rounds of the fixpoint that found new tuples.
    """

    bound: int
    entries: Mapping[str, frozenset[StringTuple]]
    iterations: int = 0

    def __getitem__(self, name: str) -> frozenset[StringTuple]:
        return self.entries[name]

    def sorted(self, name: str) -> list[StringTuple]:
        return sorted(self.entries[name])


def enumerate_language(g: Grammar, bound: int) -> LanguageTable:
    """Bottom-up semi-naive fixpoint over derivable tuples of length <= bound.

    Both operations add lengths, so a derivation of a short tuple only goes
    through short intermediate values and the length cut is exact.
    """
    require_valid(g)
    compiled = []
    for rule in g.rules:
        occ = nonterminals(rule.rhs)
        compiled.append((rule.lhs, occ, compile_term(rule.rhs), term_length(rule.rhs)))

    known: dict[str, set[StringTuple]] = {n.name: set() for n in g.nonterminals}
    delta: dict[str, set[StringTuple]] = {n.name: set() for n in g.nonterminals}
    for lhs, occ, fn, const in compiled:
        if not occ and const <= bound:
            value = fn(())
            if value not in known[lhs]:
                known[lhs].add(value)
                delta[lhs].add(value)

    iterations = int(any(delta.values()))
    while any(delta.values()):
        fresh: dict[str, set[StringTuple]] = {n: set() for n in known}
        for lhs, occ, fn, const in compiled:
            if not occ:
                continue
            target = known[lhs]
            if len(occ) == 1:
                room = bound - const
                for v in delta[occ[0]]:
                    if v.length <= room:
                        value = fn((v,))
                        if value not in target:
                            fresh[lhs].add(value)
                continue
            for i, name in enumerate(occ):
                if not delta[name]:
                    continue
                pools = []
                for idx, other in enumerate(occ):
                    if idx < i:
                        pools.append(known[other] - delta[other])
                    elif idx == i:
                        pools.append(delta[other])
                    else:
                        pools.append(known[other])
                for args in itertools.product(*pools):
                    if const + sum(a.length for a in args) <= bound:
                        value = fn(args)
                        if value not in target:
                            fresh[lhs].add(value)
        for name, values in fresh.items():
            known[name] |= values
        delta = fresh
        iterations += any(fresh.values())
    return LanguageTable(bound, {n: frozenset(v) for n, v in known.items()}, iterations)


@dataclass(frozen=True)
class Difference:
    """A tuple in the start language of exactly one grammar (``side`` is 1 or 2)."""

    witness: StringTuple
    side: int


def equiv_up_to(g1: Grammar, g2: Grammar, bound: int) -> Difference | None:
    """``None`` if both start languages agree up to ``bound``, else the least witness."""
    l1 = enumerate_language(g1, bound)[g1.start]
    l2 = enumerate_language(g2, bound)[g2.start]
    diff = l1 ^ l2
    if not diff:
        return None
    witness = min(diff)
    return Difference(witness, 1 if witness in l1 else 2)


def prune(g: Grammar) -> Grammar:
    """Drop unproductive, then unreachable, nonterminals and their rules."""
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            if rule.lhs not in productive and all(n in productive for n in nonterminals(rule.rhs)):
                productive.add(rule.lhs)
                changed = True
    rules = [r for r in g.rules if r.lhs in productive and all(n in productive for n in nonterminals(r.rhs))]
    reachable = {g.start}
    stack = [g.start]
    while stack:
        name = stack.pop()
        for r in rules:
            if r.lhs == name:
                for n in nonterminals(r.rhs):
                    if n not in reachable:
                        reachable.add(n)
                        stack.append(n)
    rules = [r for r in rules if r.lhs in reachable]
    nts = tuple(n for n in g.nonterminals if n.name in reachable)
    return g.replace(rules=tuple(dict.fromkeys(rules)), nonterminals=nts)
