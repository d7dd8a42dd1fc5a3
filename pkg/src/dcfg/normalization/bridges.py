"""Pass 3: remove intercalated constants that carry no symbols.

``A -> B @j ("",...,"")`` with ``l`` gaps in the constant equals a derived
nonterminal generating ``B``'s language with gap ``j`` closed (``l = 0``, a
bridge), kept (``l = 1``) or opened into ``l`` gaps (a split).  Bridges and
splits compose, so a derived nonterminal is identified by its base and one
gap count per gap of the base; its rules are obtained from the base's rules.
"""
from __future__ import annotations

from ..grammar import Grammar, Nonterminal, Rule, prune
from ..terms import Concat, Intercal, NontermLeaf, Term, TupleLeaf
from ..tuples import StringTuple, reshape
from .derived import Derivation, PassResult, reshape_name
from .shapes import NFStage, Shaped, eliminate_unary, fresh_name, require_stage


class _Registry:
    def __init__(self, g: Grammar):
        self.ranks = dict(g.ranks)
        self.taken = set(self.ranks) | set(g.alphabet)
        self.k = g.k
        self.names: dict[tuple[str, tuple[int, ...]], str] = {}
        self.pending: list[tuple[str, tuple[int, ...]]] = []
        self.derived: dict[str, Derivation] = {}

    def ref(self, base: str, counts: tuple[int, ...]) -> str:
        if all(c == 1 for c in counts):
            return base
        key = (base, counts)
        if key not in self.names:
            rank = sum(counts)
            assert rank <= self.k, "reshaped rank exceeds k"
            name = reshape_name(base, counts)
            if name in self.taken:
                name = fresh_name(name, self.taken)
            self.taken.add(name)
            self.names[key] = name
            self.ranks[name] = rank
            self.derived[name] = Derivation(base, "reshape", counts)
            self.pending.append(key)
        return self.names[key]


def _gap_fill(reg: _Registry, lhs: str, base: str, counts: list[int], j: int, u: StringTuple) -> Rule:
    """Rule for ``lhs -> base[counts] @j' u`` where gap ``j`` of ``base`` has count 1."""
    if u.length:
        target = reg.ref(base, tuple(counts))
        return Rule(lhs, Intercal(1 + sum(counts[: j - 1]), NontermLeaf(target), TupleLeaf(u)))
    counts = list(counts)
    counts[j - 1] = u.rank
    return Rule(lhs, NontermLeaf(reg.ref(base, tuple(counts))))


def _reshaped_rules(reg: _Registry, name: str, counts: tuple[int, ...], base_rules: list[Shaped]) -> list[Rule]:
    out: list[Rule] = []
    ranks = reg.ranks
    for s in base_rules:
        if s.kind == "const":
            out.append(Rule(name, TupleLeaf(reshape(s.u, counts))))
            continue
        rb, ru = ranks[s.nt], s.u.rank
        if s.kind == "pre":
            u = reshape(s.u, counts[:ru])
            target = NontermLeaf(reg.ref(s.nt, counts[ru:]))
            rhs: Term = target if u == StringTuple.epsilon(0) else Concat(TupleLeaf(u), target)
            out.append(Rule(name, rhs))
        elif s.kind == "post":
            u = reshape(s.u, counts[rb:])
            target = NontermLeaf(reg.ref(s.nt, counts[:rb]))
            rhs = target if u == StringTuple.epsilon(0) else Concat(target, TupleLeaf(u))
            out.append(Rule(name, rhs))
        else:
            l = s.j
            inner = counts[l - 1 : l - 1 + ru]
            outer = list(counts[: l - 1]) + [1] + list(counts[l - 1 + ru :])
            out.append(_gap_fill(reg, name, s.nt, outer, l, reshape(s.u, inner)))
    return out


def run_pass3(g: Grammar) -> PassResult:
    shaped = require_stage(g, NFStage.NO_EPS_NONTERM)
    reg = _Registry(g)
    by_lhs: dict[str, list[Shaped]] = {}
    for s in shaped:
        by_lhs.setdefault(s.lhs, []).append(s)

    rules: list[Rule] = []
    for s, rule in zip(shaped, g.rules):
        if s.kind == "ic" and s.u.length == 0:
            counts = [1] * reg.ranks[s.nt]
            rules.append(_gap_fill(reg, s.lhs, s.nt, counts, s.j, s.u))
        else:
            rules.append(rule)
    done = 0
    while done < len(reg.pending):
        base, counts = reg.pending[done]
        done += 1
        rules += _reshaped_rules(reg, reg.names[(base, counts)], counts, by_lhs.get(base, []))

    notes = [f"derived {name} from {d.base} with gap counts {list(d.arg)}" for name, d in reg.derived.items()]
    out = g.replace(
        nonterminals=tuple(Nonterminal(n, r) for n, r in reg.ranks.items()),
        rules=tuple(dict.fromkeys(rules)),
    )
    full = eliminate_unary(out)
    return PassResult(prune(full), g, derived=reg.derived, notes=notes, unpruned=full)


def pass3_bridges_splits(g: Grammar) -> Grammar:
    return run_pass3(g).grammar
