"""Pass 2: no nonterminal other than the start derives its all-empty tuple."""
from __future__ import annotations

import enum

from ..grammar import Grammar, Nonterminal, Rule, enumerate_language, prune
from ..terms import TupleLeaf, evaluate, nonterminals
from ..tuples import StringTuple
from .derived import PassResult
from .shapes import NFStage, Shaped, fresh_name, require_stage


class EpsFlag(enum.Enum):
    NOT_EPS = "not-eps-generating"
    EPS = "eps-generating"
    STRICT_EPS = "strictly-eps-generating"
    UNPRODUCTIVE = "unproductive"


def _fixpoint(shaped: list[Shaped], holds) -> set[str]:
    marked: set[str] = set()
    changed = True
    while changed:
        changed = False
        for s in shaped:
            if s.lhs not in marked and holds(s, marked):
                marked.add(s.lhs)
                changed = True
    return marked


def compute_eps_flags(g: Grammar) -> dict[str, EpsFlag]:
    shaped = require_stage(g, NFStage.WELL_FORMED)
    productive = _fixpoint(shaped, lambda s, m: s.kind == "const" or s.nt in m)
    eps = _fixpoint(
        shaped,
        lambda s, m: s.u.is_empty() and (s.kind == "const" or s.nt in m),
    )
    emits = _fixpoint(
        shaped,
        lambda s, m: (s.kind == "const" and s.u.length > 0)
        or (s.kind != "const" and s.nt in productive and (s.u.length > 0 or s.nt in m)),
    )
    flags = {}
    for n in g.nonterminals:
        if n.name not in productive:
            flags[n.name] = EpsFlag.UNPRODUCTIVE
        elif n.name in eps:
            flags[n.name] = EpsFlag.EPS if n.name in emits else EpsFlag.STRICT_EPS
        else:
            flags[n.name] = EpsFlag.NOT_EPS
    return flags


def run_pass2(g: Grammar) -> PassResult:
    shaped = require_stage(g, NFStage.WELL_FORMED)
    flags = compute_eps_flags(g)
    ranks = g.ranks
    rules: list[Rule] = []
    for s, rule in zip(shaped, g.rules):
        if s.kind == "const":
            if s.u.length == 1:
                rules.append(rule)
            continue
        flag = flags[s.nt]
        if flag in (EpsFlag.EPS, EpsFlag.NOT_EPS):
            rules.append(rule)
        if flag in (EpsFlag.EPS, EpsFlag.STRICT_EPS):
            value = evaluate(rule.rhs, {s.nt: StringTuple.epsilon(ranks[s.nt])})
            if value.length == 1:
                rules.append(Rule(s.lhs, TupleLeaf(value)))

    notes = [f"{name}: {flag.value}" for name, flag in flags.items() if flag is not EpsFlag.NOT_EPS]
    start, nts = g.start, list(g.nonterminals)
    if StringTuple.epsilon(0) in enumerate_language(g, 0)[g.start]:
        if any(g.start in nonterminals(r.rhs) for r in rules):
            start = fresh_name(g.start, set(ranks) | set(g.alphabet))
            nts.append(Nonterminal(start, 0))
            rules += [Rule(start, r.rhs) for r in rules if r.lhs == g.start]
            notes.append(f"start {g.start} occurs on a right-hand side; new start {start}")
        rules.append(Rule(start, TupleLeaf(StringTuple.epsilon(0))))
    out = prune(g.replace(rules=tuple(dict.fromkeys(rules)), nonterminals=tuple(nts), start=start))
    return PassResult(out, g, notes=notes)


def pass2_eliminate_eps(g: Grammar) -> Grammar:
    return run_pass2(g).grammar
