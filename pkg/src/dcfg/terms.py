"""k-correct terms over string tuples and nonterminals.

Nonterminal leaves carry only a name; ranks are looked up in a mapping supplied
by the caller (normally ``Grammar.ranks``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence, Union

from .tuples import StringTuple, concat, intercalate, pieces

ONE = StringTuple.epsilon(1)
EPS = StringTuple.epsilon(0)


class TermError(ValueError):
    """Base class for malformed terms."""


class UnknownNonterminalError(TermError):
    pass


class NotLinearError(TermError):
    pass


class NotKCorrectError(TermError):
    pass


class BindingError(TermError):
    """Missing binding or a binding of the wrong rank."""


@dataclass(frozen=True)
class TupleLeaf:
    value: StringTuple


@dataclass(frozen=True)
class NontermLeaf:
    name: str


@dataclass(frozen=True)
class Concat:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Intercal:
    j: int
    left: "Term"
    right: "Term"


Term = Union[TupleLeaf, NontermLeaf, Concat, Intercal]


def leaf(*components: str) -> TupleLeaf:
    return TupleLeaf(StringTuple.of(*components))


def nonterminals(t: Term) -> list[str]:
    """Nonterminal occurrences, left to right."""
    if isinstance(t, NontermLeaf):
        return [t.name]
    if isinstance(t, TupleLeaf):
        return []
    return nonterminals(t.left) + nonterminals(t.right)


def is_ground(t: Term) -> bool:
    return not nonterminals(t)


def is_linear(t: Term) -> bool:
    return len(nonterminals(t)) <= 1


def subterms(t: Term) -> Iterator[Term]:
    """Post-order (leftmost-innermost first)."""
    if isinstance(t, (Concat, Intercal)):
        yield from subterms(t.left)
        yield from subterms(t.right)
    yield t


def leaves(t: Term) -> Iterator[TupleLeaf]:
    return (s for s in subterms(t) if isinstance(s, TupleLeaf))


def rank_of(t: Term, ranks: Mapping[str, int]) -> int:
    if isinstance(t, TupleLeaf):
        return t.value.rank
    if isinstance(t, NontermLeaf):
        try:
            return ranks[t.name]
        except KeyError:
            raise UnknownNonterminalError(t.name) from None
    left, right = rank_of(t.left, ranks), rank_of(t.right, ranks)
    if isinstance(t, Concat):
        return left + right
    return left + right - 1


@dataclass(frozen=True)
class Violation:
    node: Term
    reason: str

    def __str__(self) -> str:
        return self.reason


def check_k_correct(t: Term, k: int, ranks: Mapping[str, int]) -> Violation | None:
    """First violation in post-order, or ``None`` if ``t`` is k-correct."""
    for node in subterms(t):
        if isinstance(node, NontermLeaf):
            if node.name not in ranks:
                return Violation(node, f"unknown nonterminal {node.name}")
            r = ranks[node.name]
        elif isinstance(node, TupleLeaf):
            r = node.value.rank
        else:
            left = rank_of(node.left, ranks)
            right = rank_of(node.right, ranks)
            if isinstance(node, Concat):
                if left + right > k:
                    return Violation(node, f"concatenation of ranks {left}+{right} exceeds k={k}")
                r = left + right
            else:
                if not 1 <= node.j <= k:
                    return Violation(node, f"intercalation index {node.j} not in 1..{k}")
                if node.j > left:
                    return Violation(node, f"intercalation index {node.j} exceeds left rank {left}")
                if left + right > k + 1:
                    return Violation(node, f"intercalation of ranks {left}+{right} exceeds k+1={k + 1}")
                r = left + right - 1
        if r > k:
            return Violation(node, f"rank {r} exceeds k={k}")
    return None


Bindings = Union[Mapping[str, StringTuple], Sequence[StringTuple], None]


def evaluate(t: Term, bindings: Bindings = None) -> StringTuple:
    """Value of ``t`` with nonterminals bound by name or by occurrence order."""
    occurrences = iter(range(len(nonterminals(t))))

    def lookup(name: str) -> StringTuple:
        idx = next(occurrences)
        try:
            if bindings is None:
                raise KeyError(name)
            if isinstance(bindings, Mapping):
                return bindings[name]
            return bindings[idx]
        except (KeyError, IndexError):
            raise BindingError(f"no value bound for {name}") from None

    def go(node: Term) -> StringTuple:
        if isinstance(node, TupleLeaf):
            return node.value
        if isinstance(node, NontermLeaf):
            return lookup(node.name)
        left = go(node.left)
        right = go(node.right)
        if isinstance(node, Concat):
            return concat(left, right)
        return intercalate(left, node.j, right)

    return go(t)


def compile_term(t: Term) -> Callable[[Sequence[StringTuple]], StringTuple]:
    """Closure evaluating ``t`` from positional occurrence bindings."""
    counter = iter(range(len(nonterminals(t))))

    def build(node: Term) -> Callable[[Sequence[StringTuple]], StringTuple]:
        if isinstance(node, TupleLeaf):
            value = node.value
            return lambda args: value
        if isinstance(node, NontermLeaf):
            idx = next(counter)
            return lambda args: args[idx]
        left, right = build(node.left), build(node.right)
        if isinstance(node, Concat):
            return lambda args: concat(left(args), right(args))
        j = node.j
        return lambda args: intercalate(left(args), j, right(args))

    return build(t)


def term_length(t: Term) -> int:
    """Total number of terminal symbols in the leaves."""
    return sum(lf.value.length for lf in leaves(t))


# -- well-formed chains ------------------------------------------------------

@dataclass(frozen=True)
class Prepend:
    u: StringTuple


@dataclass(frozen=True)
class Append:
    u: StringTuple


@dataclass(frozen=True)
class IntercalStep:
    j: int
    u: StringTuple


Step = Union[Prepend, Append, IntercalStep]


@dataclass(frozen=True)
class WellFormedChain:
    base: str | StringTuple
    steps: tuple[Step, ...] = ()

    def replay(self) -> Term:
        t: Term = NontermLeaf(self.base) if isinstance(self.base, str) else TupleLeaf(self.base)
        for step in self.steps:
            t = apply_step(step, t)
        return t


def apply_step(step: Step, t: Term) -> Term:
    if isinstance(step, Prepend):
        return Concat(TupleLeaf(step.u), t)
    if isinstance(step, Append):
        return Concat(t, TupleLeaf(step.u))
    return Intercal(step.j, t, TupleLeaf(step.u))


@dataclass
class _Context:
    """Value of a linear term as ``prefix . (v with gaps filled) . suffix``."""

    name: str
    prefix: StringTuple
    gaps: list[StringTuple]
    suffix: StringTuple


def _context(t: Term, ranks: Mapping[str, int]) -> _Context | StringTuple:
    if isinstance(t, TupleLeaf):
        return t.value
    if isinstance(t, NontermLeaf):
        return _Context(t.name, EPS, [ONE] * ranks[t.name], EPS)
    left, right = _context(t.left, ranks), _context(t.right, ranks)
    if isinstance(left, _Context) and isinstance(right, _Context):
        raise NotLinearError("term has more than one nonterminal occurrence")
    if isinstance(t, Concat):
        if isinstance(left, _Context):
            left.suffix = concat(left.suffix, right)
            return left
        if isinstance(right, _Context):
            right.prefix = concat(left, right.prefix)
            return right
        return concat(left, right)
    j = t.j
    if isinstance(right, _Context):
        # (u_0..u_l) @j a  ==  (u_0..u_{j-1}) a (u_j..u_l)
        right.prefix = concat(StringTuple(left[:j]), right.prefix)
        right.suffix = concat(right.suffix, StringTuple(left[j:]))
        return right
    if not isinstance(left, _Context):
        return intercalate(left, j, right)
    if j <= left.prefix.rank:
        left.prefix = intercalate(left.prefix, j, right)
        return left
    j -= left.prefix.rank
    for i, g in enumerate(left.gaps):
        if j <= g.rank:
            left.gaps[i] = intercalate(g, j, right)
            return left
        j -= g.rank
    left.suffix = intercalate(left.suffix, j, right)
    return left


def _fill_gap(j: int, g: StringTuple) -> list[IntercalStep]:
    """Steps inserting ``g`` into gap ``j`` using arguments of length <= 1.

    Ranks along the way never exceed the final rank, so k-correctness is kept.
    """
    if g.length <= 1:
        return [IntercalStep(j, g)]
    if g.rank == 0:
        syms = g[0]
        steps = [IntercalStep(j, StringTuple(((s,), ()))) for s in syms[:-1]]
        return steps + [IntercalStep(j, StringTuple(((syms[-1],),)))]
    steps = [IntercalStep(j, StringTuple(((s,), ()))) for s in g[0]]
    steps += [IntercalStep(j, StringTuple(((), (s,)))) for s in reversed(g[-1])]
    p = j
    for comp in g[1:-1]:
        if comp:
            steps.append(IntercalStep(p, StringTuple(((), (comp[0],), ()))))
            steps += [IntercalStep(p + 1, StringTuple(((s,), ()))) for s in comp[1:]]
        else:
            steps.append(IntercalStep(p, StringTuple.epsilon(2)))
        p += 1
    return steps


def flatten_linear_term(t: Term, k: int, ranks: Mapping[str, int]) -> WellFormedChain:
    """Rewrite a linear k-correct term into an equivalent well-formed chain.

    The chain fills the nonterminal's gaps first (rank-lowering fills before
    rank-raising ones), then prepends, then appends.  Ground parts are folded
    and re-split into pieces of length at most 1.
    """
    violation = check_k_correct(t, k, ranks)
    if violation is not None:
        raise NotKCorrectError(str(violation))
    ctx = _context(t, ranks)
    if isinstance(ctx, StringTuple):
        first, *rest = pieces(ctx)
        return WellFormedChain(first, tuple(Append(p) for p in rest))

    steps: list[Step] = []
    counts = [1] * len(ctx.gaps)
    order = sorted(
        (i for i, g in enumerate(ctx.gaps) if g != ONE),
        key=lambda i: (min(ctx.gaps[i].rank, 2), -i),
    )
    for i in order:
        steps += _fill_gap(sum(counts[:i]) + 1, ctx.gaps[i])
        counts[i] = ctx.gaps[i].rank
    if ctx.prefix != EPS:
        steps += [Prepend(p) for p in reversed(pieces(ctx.prefix))]
    if ctx.suffix != EPS:
        steps += [Append(p) for p in pieces(ctx.suffix)]
    return WellFormedChain(ctx.name, tuple(steps))


# -- basic equivalences ------------------------------------------------------

def rewrite_at_root(t: Term, item: int, ranks: Mapping[str, int]) -> Term | None:
    """Apply basic equivalence ``item`` (1..8) left-to-right at the root.

    Returns ``None`` when the root is not a redex for that item.
    """
    rk = lambda s: rank_of(s, ranks)  # noqa: E731
    if item == 1:
        if isinstance(t, Concat) and isinstance(t.left, Concat):
            return Concat(t.left.left, Concat(t.left.right, t.right))
    elif item in (2, 3):
        if isinstance(t, Intercal) and isinstance(t.left, Concat):
            x1, x2, x3, j = t.left.left, t.left.right, t.right, t.j
            if item == 2 and j <= rk(x1):
                return Concat(Intercal(j, x1, x3), x2)
            if item == 3 and rk(x1) < j <= rk(x1) + rk(x2):
                return Concat(x1, Intercal(j - rk(x1), x2, x3))
    elif item in (4, 5, 6):
        if isinstance(t, Intercal) and isinstance(t.left, Intercal):
            x1, x2, x3 = t.left.left, t.left.right, t.right
            j, l = t.j, t.left.j
            if item == 4 and j < l:
                return Intercal(l + rk(x3) - 1, Intercal(j, x1, x3), x2)
            if item == 5 and l <= j < l + rk(x2):
                return Intercal(l, x1, Intercal(j - l + 1, x2, x3))
            if item == 6 and j >= l + rk(x2):
                return Intercal(l, Intercal(j - rk(x2) + 1, x1, x3), x2)
    elif item == 7:
        if isinstance(t, Intercal) and t.j == 1 and t.left == TupleLeaf(ONE):
            return t.right
    elif item == 8:
        if isinstance(t, Intercal) and t.right == TupleLeaf(ONE):
            return t.left
    else:
        raise ValueError(f"no basic equivalence numbered {item}")
    return None
