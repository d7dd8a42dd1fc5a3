"""Rule shapes for each normal-form stage and shared grammar plumbing."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from ..grammar import Grammar, Rule
from ..terms import Concat, Intercal, NontermLeaf, Term, TupleLeaf
from ..tuples import StringTuple


class NFStage(enum.Enum):
    WELL_FORMED = "wellformed"
    NO_EPS_NONTERM = "eps"
    NO_EPS_INTERCAL_ARG = "bridges"
    FINAL = "strip"


class WrongStageError(ValueError):
    """A pass was given a grammar not in the shape it expects."""


@dataclass(frozen=True)
class Shaped:
    """One rule in unary-step form.

    ``kind`` is ``"const"`` (A -> u), ``"pre"`` (A -> u B), ``"post"``
    (A -> B u), ``"ic"`` (A -> B @j u) or ``"unit"`` (A -> B).
    """

    kind: str
    lhs: str
    u: StringTuple = StringTuple.epsilon(0)
    nt: str | None = None
    j: int = 0

    def to_rule(self) -> Rule:
        u = TupleLeaf(self.u)
        rhs: Term
        if self.kind == "const":
            rhs = u
        elif self.kind == "pre":
            rhs = Concat(u, NontermLeaf(self.nt))
        elif self.kind == "post":
            rhs = Concat(NontermLeaf(self.nt), u)
        elif self.kind == "ic":
            rhs = Intercal(self.j, NontermLeaf(self.nt), u)
        else:
            rhs = NontermLeaf(self.nt)
        return Rule(self.lhs, rhs)


def classify(rule: Rule) -> Shaped | None:
    t = rule.rhs
    if isinstance(t, TupleLeaf):
        return Shaped("const", rule.lhs, t.value)
    if isinstance(t, NontermLeaf):
        return Shaped("unit", rule.lhs, nt=t.name)
    if isinstance(t, Concat):
        if isinstance(t.left, TupleLeaf) and isinstance(t.right, NontermLeaf):
            return Shaped("pre", rule.lhs, t.left.value, t.right.name)
        if isinstance(t.left, NontermLeaf) and isinstance(t.right, TupleLeaf):
            return Shaped("post", rule.lhs, t.right.value, t.left.name)
        return None
    if isinstance(t.left, NontermLeaf) and isinstance(t.right, TupleLeaf):
        return Shaped("ic", rule.lhs, t.right.value, t.left.name, t.j)
    return None


@dataclass(frozen=True)
class ShapeViolation:
    rule_index: int
    rule: Rule
    reason: str

    def __str__(self) -> str:
        from ..syntax import format_rule

        return f"rule {self.rule_index} ({format_rule(self.rule, None)}): {self.reason}"


def _shape_problem(s: Shaped | None, stage: NFStage, start: str) -> str | None:
    if s is None:
        return "right-hand side is not a single step"
    if s.kind == "unit":
        return "unary rule"
    n = s.u.length
    if n > 1:
        return "constant longer than one symbol"
    if s.kind == "const":
        if stage is not NFStage.WELL_FORMED and n == 0 and not (s.lhs == start and s.u.rank == 0):
            return "constant without symbols"
    elif s.kind in ("pre", "post"):
        if s.u == StringTuple.epsilon(0):
            return "empty prefix or suffix"
        if stage is NFStage.FINAL and n == 0:
            return "prefix or suffix without symbols"
    elif stage in (NFStage.NO_EPS_INTERCAL_ARG, NFStage.FINAL) and n == 0:
        return "intercalated constant without symbols"
    return None


def shape_check(g: Grammar, stage: NFStage) -> ShapeViolation | None:
    """First rule not allowed at ``stage``, or ``None``."""
    for idx, rule in enumerate(g.rules):
        problem = _shape_problem(classify(rule), stage, g.start)
        if problem is not None:
            return ShapeViolation(idx, rule, problem)
    return None


def require_stage(g: Grammar, stage: NFStage) -> list[Shaped]:
    violation = shape_check(g, stage)
    if violation is not None:
        raise WrongStageError(f"grammar is not in {stage.value} shape: {violation}")
    return [classify(r) for r in g.rules]


def eliminate_unary(g: Grammar) -> Grammar:
    """Replace unary rules A -> B by copies of B's other rules, transitively."""
    units: dict[str, set[str]] = {}
    for rule in g.rules:
        if isinstance(rule.rhs, NontermLeaf):
            units.setdefault(rule.lhs, set()).add(rule.rhs.name)
    if not units:
        return g
    proper: dict[str, list[Rule]] = {}
    for rule in g.rules:
        if not isinstance(rule.rhs, NontermLeaf):
            proper.setdefault(rule.lhs, []).append(rule)
    out: list[Rule] = []
    for name in dict.fromkeys(r.lhs for r in g.rules):
        closure = [name]
        seen = {name}
        for current in closure:
            for nxt in sorted(units.get(current, ())):
                if nxt not in seen:
                    seen.add(nxt)
                    closure.append(nxt)
        for member in closure:
            out += [Rule(name, r.rhs) for r in proper.get(member, ())]
    return g.replace(rules=tuple(dict.fromkeys(out)))


def fresh_name(base: str, taken: set[str]) -> str:
    base = re.sub(r"#\d+$", "", base)
    n = 1
    while f"{base}#{n}" in taken:
        n += 1
    name = f"{base}#{n}"
    taken.add(name)
    return name
