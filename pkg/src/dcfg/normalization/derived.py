"""Derived nonterminals and per-pass results."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..grammar import Grammar
from ..syntax import format_rule
from ..tuples import StringTuple, reshape, strip_left, strip_right


@dataclass(frozen=True)
class Derivation:
    """How a derived nonterminal's language follows from its base's.

    ``kind`` is ``"reshape"`` (``arg`` holds one count per gap of the base:
    0 closes the gap as a bridge does, ``l >= 2`` opens it like an ``l``-split),
    ``"strip_right"`` or ``"strip_left"`` (``arg`` is the strip count).
    """

    base: str
    kind: str
    arg: tuple[int, ...] | int

    def image(self, u: StringTuple) -> StringTuple | None:
        if self.kind == "reshape":
            return reshape(u, self.arg)
        if self.kind == "strip_right":
            return strip_right(u, self.arg)
        return strip_left(u, self.arg)

    def rank(self, base_rank: int) -> int:
        if self.kind == "reshape":
            return sum(self.arg)
        return base_rank - self.arg


def reshape_name(base: str, counts: tuple[int, ...]) -> str:
    """Decorations applied right to left, so each index is still a gap of ``base``."""
    name = base
    for gap in range(len(counts), 0, -1):
        c = counts[gap - 1]
        if c == 0:
            name += f"^bridge{gap}"
        elif c >= 2:
            name += f"^split{gap}_{c}"
    return name


def strip_name(base: str, side: str, p: int) -> str:
    return f"{base}/{p}" if side == "right" else f"{base}\\{p}"


@dataclass
class PassResult:
    grammar: Grammar
    source: Grammar
    derived: dict[str, Derivation] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    # before pruning: every derived nonterminal still present
    unpruned: Grammar | None = None

    def trace(self) -> list[str]:
        """``- rule`` / ``+ rule`` for every change, then ``! note`` lines."""
        before = _rule_lines(self.source)
        after = _rule_lines(self.grammar)
        before_set, after_set = set(before), set(after)
        lines = [f"- {r}" for r in before if r not in after_set]
        lines += [f"+ {r}" for r in after if r not in before_set]
        lines += [f"! {n}" for n in self.notes]
        return lines


def _rule_lines(g: Grammar) -> list[str]:
    ranks = g.ranks
    return list(dict.fromkeys(format_rule(r, ranks.get(r.lhs)) for r in g.rules))
