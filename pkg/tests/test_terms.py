import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import random_term, random_tuple
from dcfg.terms import (
    Append,
    BindingError,
    Concat,
    Intercal,
    IntercalStep,
    NontermLeaf,
    NotKCorrectError,
    NotLinearError,
    Prepend,
    TupleLeaf,
    UnknownNonterminalError,
    WellFormedChain,
    check_k_correct,
    evaluate,
    flatten_linear_term,
    leaf,
    nonterminals,
    rank_of,
    rewrite_at_root,
)
from dcfg.tuples import StringTuple

T = StringTuple.of
B, C, TN = NontermLeaf("B"), NontermLeaf("C"), NontermLeaf("T")

# T -> "a0" (T @1 ("b0","a1")) "b1"
T_BODY = Concat(Concat(leaf("a0"), Intercal(1, TN, leaf("b0", "a1"))), leaf("b1"))


def test_rank_of():
    assert rank_of(leaf("a", "b"), {}) == 1
    assert rank_of(Concat(B, C), {"B": 1, "C": 1}) == 2
    assert rank_of(Intercal(1, TN, leaf("c")), {"T": 1}) == 0
    assert rank_of(Intercal(1, TN, leaf("b0", "a1")), {"T": 1}) == 1
    with pytest.raises(UnknownNonterminalError):
        rank_of(Concat(B, C), {"B": 1})


def test_check_k_correct():
    assert check_k_correct(T_BODY, 1, {"T": 1}) is None
    bad = Intercal(2, NontermLeaf("A"), leaf("a"))
    assert "exceeds left rank" in str(check_k_correct(bad, 3, {"A": 1}))
    over = Concat(NontermLeaf("A"), B)
    violation = check_k_correct(over, 1, {"A": 1, "B": 1})
    assert violation.node == over
    assert "exceeds k" in str(violation)


def test_check_k_correct_reports_innermost_first():
    inner = Concat(B, B)
    t = Intercal(3, inner, leaf("a"))
    assert check_k_correct(t, 1, {"B": 1}).node == inner


def test_evaluate_examples():
    assert evaluate(T_BODY, {"T": StringTuple.epsilon(1)}) == T("a0 b0", "a1 b1")
    assert evaluate(leaf("x")) == T("x")
    assert evaluate(Intercal(1, TupleLeaf(StringTuple.epsilon(1)), leaf("w"))) == T("w")


def test_evaluate_by_occurrence_and_errors():
    t = Concat(B, B)
    assert evaluate(t, [T("a"), T("b")]) == T("a b")
    with pytest.raises(BindingError):
        evaluate(t)


def test_flatten_examples():
    chain = flatten_linear_term(Concat(leaf("a"), B), 1, {"B": 0})
    assert chain == WellFormedChain("B", (Prepend(T("a")),))

    t = Intercal(1, leaf("u0", "u1"), B)
    chain = flatten_linear_term(t, 1, {"B": 0})
    assert chain == WellFormedChain("B", (Prepend(T("u0")), Append(T("u1"))))

    t = Intercal(1, Concat(B, leaf("c")), leaf("d"))
    chain = flatten_linear_term(t, 1, {"B": 1})
    assert chain == WellFormedChain("B", (IntercalStep(1, T("d")), Append(T("c"))))
    rng = random.Random(0)
    replay = chain.replay()
    for _ in range(50):
        v = random_tuple(rng, 1, 4)
        assert evaluate(t, {"B": v}) == evaluate(replay, {"B": v})


def test_flatten_drops_unit_intercalation():
    chain = flatten_linear_term(Intercal(1, B, TupleLeaf(StringTuple.epsilon(1))), 1, {"B": 1})
    assert chain == WellFormedChain("B")


def test_flatten_ground_term_folds():
    chain = flatten_linear_term(Concat(leaf("a"), leaf("b")), 0, {})
    assert chain == WellFormedChain(T("a"), (Append(T("b")),))
    assert flatten_linear_term(leaf(""), 0, {}) == WellFormedChain(T(""))


def test_flatten_errors():
    with pytest.raises(NotLinearError):
        flatten_linear_term(Concat(B, B), 2, {"B": 0})
    with pytest.raises(NotKCorrectError):
        flatten_linear_term(Concat(B, B), 1, {"B": 1})


def test_flatten_long_gap_filler_keeps_ranks_within_k():
    # B has rank 1 and receives a rank-1 filler of length 2 at k = 1
    t = Intercal(1, B, leaf("a", "b"))
    chain = flatten_linear_term(t, 1, {"B": 1})
    assert all(s.u.length <= 1 for s in chain.steps)
    assert check_k_correct(chain.replay(), 1, {"B": 1}) is None


def _random_binding(rng, ranks):
    return {n: random_tuple(rng, r, 4) for n, r in ranks.items()}


def _check_chain(chain, k, ranks):
    for step in chain.steps:
        assert step.u.length <= 1
        if isinstance(step, (Prepend, Append)):
            assert step.u != StringTuple.epsilon(0)
    if isinstance(chain.base, StringTuple):
        assert chain.base.length <= 1
    assert check_k_correct(chain.replay(), k, ranks) is None


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_flatten_preserves_value_and_rank(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    ranks = {"X": rng.randint(0, k)}
    rank = rng.randint(0, k)
    t = random_term(rng, k, rank, rng.randint(0, 6), ranks)
    chain = flatten_linear_term(t, k, ranks)
    _check_chain(chain, k, ranks)
    replay = chain.replay()
    assert rank_of(replay, ranks) == rank_of(t, ranks)
    for _ in range(10):
        binding = _random_binding(rng, ranks)
        assert evaluate(replay, binding) == evaluate(t, binding)


# -- basic equivalences on terms ---------------------------------------------

def _positions(t, path=()):
    yield path, t
    if isinstance(t, (Concat, Intercal)):
        yield from _positions(t.left, path + ("left",))
        yield from _positions(t.right, path + ("right",))


def _replace(t, path, new):
    if not path:
        return new
    head, rest = path[0], path[1:]
    if head == "left":
        return type(t)(*([t.j] if isinstance(t, Intercal) else []), _replace(t.left, rest, new), t.right)
    return type(t)(*([t.j] if isinstance(t, Intercal) else []), t.left, _replace(t.right, rest, new))


def _multi_term(rng, k, rank, depth, counter):
    """Random k-correct term whose nonterminals are all distinct (a multicontext)."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            counter[0] += 1
            return NontermLeaf(f"X{counter[0]}_{rank}")
        return TupleLeaf(random_tuple(rng, rank, 1))
    if rng.random() < 0.5:
        r1 = rng.randint(0, rank)
        return Concat(_multi_term(rng, k, r1, depth - 1, counter), _multi_term(rng, k, rank - r1, depth - 1, counter))
    r_left = rng.randint(1, min(k, rank + 1))
    return Intercal(
        rng.randint(1, r_left),
        _multi_term(rng, k, r_left, depth - 1, counter),
        _multi_term(rng, k, rank + 1 - r_left, depth - 1, counter),
    )


def _ranks_of(t):
    return {n: int(n.rsplit("_", 1)[1]) for n in nonterminals(t)}


def test_rewrites_preserve_values():
    rng = random.Random(11)
    applied = set()
    for _ in range(600):
        k = rng.randint(1, 3)
        t = _multi_term(rng, k, rng.randint(0, k), 4, [0])
        ranks = _ranks_of(t)
        for path, node in _positions(t):
            for item in range(1, 9):
                new = rewrite_at_root(node, item, ranks)
                if new is None:
                    continue
                applied.add(item)
                rewritten = _replace(t, path, new)
                for _ in range(30):
                    binding = _random_binding(rng, ranks)
                    assert evaluate(rewritten, binding) == evaluate(t, binding), item
    assert applied == set(range(1, 9))


def test_rewrite_items_7_and_8():
    one = TupleLeaf(StringTuple.epsilon(1))
    assert rewrite_at_root(Intercal(1, one, B), 7, {"B": 0}) == B
    assert rewrite_at_root(Intercal(1, B, one), 8, {"B": 1}) == B
    assert rewrite_at_root(Concat(B, B), 8, {"B": 1}) is None
