"""Pass 1: break linear rules into single-step rules."""
from __future__ import annotations

from ..grammar import Grammar, Nonterminal, Rule, is_linear, prune, require_valid
from ..terms import (
    IntercalStep,
    NontermLeaf,
    NotLinearError,
    TupleLeaf,
    apply_step,
    flatten_linear_term,
)
from .derived import PassResult
from .shapes import eliminate_unary, fresh_name


def run_pass1(g: Grammar) -> PassResult:
    require_valid(g)
    if not is_linear(g):
        raise NotLinearError("grammar is not linear")
    ranks = dict(g.ranks)
    taken = set(ranks) | set(g.alphabet)
    rules: list[Rule] = []
    notes: list[str] = []
    for rule in g.rules:
        chain = flatten_linear_term(rule.rhs, g.k, ranks)
        if isinstance(chain.base, str):
            current, rank = NontermLeaf(chain.base), ranks[chain.base]
        else:
            current, rank = TupleLeaf(chain.base), chain.base.rank
            if chain.steps:
                name = fresh_name(rule.lhs, taken)
                ranks[name] = rank
                rules.append(Rule(name, current))
                current = NontermLeaf(name)
        for idx, step in enumerate(chain.steps):
            if isinstance(step, IntercalStep):
                rank += step.u.rank - 1
            else:
                rank += step.u.rank
            body = apply_step(step, current)
            if idx == len(chain.steps) - 1:
                break
            name = fresh_name(rule.lhs, taken)
            ranks[name] = rank
            rules.append(Rule(name, body))
            current = NontermLeaf(name)
        else:
            body = current
        rules.append(Rule(rule.lhs, body))
    created = [n for n in ranks if n not in g.ranks]
    if created:
        notes.append("intermediate nonterminals: " + " ".join(created))
    out = g.replace(
        nonterminals=tuple(Nonterminal(n, r) for n, r in ranks.items()),
        rules=tuple(dict.fromkeys(rules)),
    )
    out = prune(eliminate_unary(out))
    return PassResult(out, g, notes=notes)


def pass1_wellformed(g: Grammar) -> Grammar:
    return run_pass1(g).grammar
