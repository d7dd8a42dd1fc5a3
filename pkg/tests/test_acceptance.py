"""Acceptance criteria 1-8.

Each test records one PASS/FAIL line; the lines are printed at the end of
the pytest run (see ``conftest.py``).  Run just this file with
``pytest tests/test_acceptance.py``.
"""
import random
import time
from functools import lru_cache

from corpus import corpus, random_term, random_tuple
from dcfg.cli import main
from dcfg.grammar import emit_example, enumerate_language, equiv_up_to, example_word, validate
from dcfg.normalization import PASSES, NFStage, run_pipeline, shape_check
from dcfg.syntax import format_grammar, parse_grammar, write_grammar
from dcfg.terms import TupleLeaf, check_k_correct, evaluate, flatten_linear_term, rank_of
from dcfg.tuples import StringTuple
from oracles import derived_mismatches, random_triple, basic_equivalence_checks

REPORT: dict[int, str] = {}
N_RANDOM = 200
BOUND = 8
STAGES = dict(zip(PASSES, NFStage))
EPS_LEAF = TupleLeaf(StringTuple.epsilon(0))


def record(criterion, ok, detail):
    REPORT[criterion] = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(REPORT[criterion])
    assert ok, REPORT[criterion]


@lru_cache(maxsize=None)
def pipeline_runs():
    """Every corpus grammar with its pipeline run, plus the wall time taken."""
    started = time.perf_counter()
    runs = [(name, g, run_pipeline(g)) for name, g in corpus(N_RANDOM)]
    return runs, time.perf_counter() - started


def test_criterion_1_example_languages():
    started = time.perf_counter()
    problems = []
    for k in (1, 2):
        g = emit_example(k)
        bound = 4 * (k + 1) * 3
        # word(m) has 2m(k+1) symbols, so this bound admits m up to 6
        got = enumerate_language(g, bound)["S"]
        want = {example_word(k, m) for m in range(bound // (2 * (k + 1)) + 1)}
        if got != want:
            problems.append(f"k={k} bound={bound}")
        # the bound at which exactly m = 0..3 survive
        tight = 2 * (k + 1) * 3
        if enumerate_language(g, tight)["S"] != {example_word(k, m) for m in range(4)}:
            problems.append(f"k={k} bound={tight}")
    elapsed = time.perf_counter() - started
    record(1, not problems and elapsed < 30, f"k=1,2 exact at bounds 4(k+1)*3 and 2(k+1)*3; {elapsed:.2f}s {problems}")


def test_criterion_2_basic_equivalences():
    rng = random.Random(2024)
    checks = failures = 0
    seen = set()
    for _ in range(1000):
        x1, x2, x3 = random_triple(rng, max_rank=3, max_len=6)
        for j in range(1, x1.rank + x2.rank + x3.rank + 2):
            for l in range(1, max(x1.rank, 1) + 1):
                for item, lhs, rhs in basic_equivalence_checks(x1, x2, x3, j, l):
                    checks += 1
                    seen.add(item)
                    failures += lhs != rhs
    record(2, failures == 0 and seen == set(range(1, 9)), f"1000 triples, {checks} identity checks, {failures} failures")


def test_criterion_3_flattening():
    rng = random.Random(3)
    failures = 0
    for _ in range(500):
        k = rng.randint(1, 3)
        ranks = {"X": rng.randint(0, k)}
        t = random_term(rng, k, rng.randint(0, k), rng.randint(0, 6), ranks)
        replay = flatten_linear_term(t, k, ranks).replay()
        if check_k_correct(replay, k, ranks) is not None or rank_of(replay, ranks) != rank_of(t, ranks):
            failures += 1
            continue
        for _ in range(30):
            binding = {"X": random_tuple(rng, ranks["X"], 4)}
            if evaluate(t, binding) != evaluate(replay, binding):
                failures += 1
                break
    record(3, failures == 0, f"500 terms x 30 bindings, {failures} failures")


def test_criterion_4_language_preservation():
    runs, build_time = pipeline_runs()
    started = time.perf_counter()
    witnesses = []
    for name, g, run in runs:
        for pass_name, parts in run.results.items():
            if equiv_up_to(g, parts[-1].grammar, BOUND) is not None:
                witnesses.append(f"{name}/{pass_name}")
    elapsed = build_time + time.perf_counter() - started
    ok = not witnesses and elapsed < 300 and len(runs) >= 202
    record(4, ok, f"{len(runs)} grammars x 4 pass prefixes at bound {BOUND}, {len(witnesses)} witnesses, {elapsed:.1f}s")


def test_criterion_5_shapes():
    runs, _ = pipeline_runs()
    bad = []
    for name, _, run in runs:
        for pass_name, parts in run.results.items():
            if shape_check(parts[-1].grammar, STAGES[pass_name]) is not None:
                bad.append(f"{name}/{pass_name}")
    record(5, not bad, f"{len(runs)} grammars x 4 stages, {len(bad)} shape violations {bad[:5]}")


def test_criterion_6_derived_nonterminals():
    runs, _ = pipeline_runs()
    kinds = {"bridge": 0, "split": 0, "strip": 0}
    bad = []
    for name, _, run in runs:
        for parts in run.results.values():
            for part in parts:
                for d in part.derived.values():
                    if d.kind == "reshape":
                        kinds["bridge"] += 0 in d.arg
                        kinds["split"] += any(c >= 2 for c in d.arg)
                    else:
                        kinds["strip"] += 1
                bad += [f"{name}:{n}" for n in derived_mismatches(part, BOUND)]
    ok = not bad and all(kinds.values())
    record(6, ok, f"derived nonterminals checked at bound {BOUND}: {kinds}, {len(bad)} mismatches {bad[:5]}")


def test_criterion_7_epsilon_freeness():
    runs, _ = pipeline_runs()
    bad = []
    eps = StringTuple.epsilon(0)
    for name, g, run in runs:
        out = run.results["eps"][-1].grammar
        table = enumerate_language(out, BOUND)
        for n in out.nonterminals:
            if n.name != out.start and StringTuple.epsilon(n.rank) in table[n.name]:
                bad.append(f"{name}:{n.name}")
        has_rule = any(r.lhs == out.start and r.rhs == EPS_LEAF for r in out.rules)
        if has_rule != (eps in enumerate_language(g, 0)[g.start]):
            bad.append(f"{name}:start")
    record(7, not bad, f"{len(runs)} grammars after the eps pass, {len(bad)} violations {bad[:5]}")


def test_criterion_8_cli_round_trip(tmp_path):
    runs, _ = pipeline_runs()
    bad = []
    for name, g, run in runs:
        for h in (g, run.grammar):
            text = format_grammar(h)
            if format_grammar(parse_grammar(text)) != text or parse_grammar(text) != h:
                bad.append(name)
    statuses = []
    for k in (1, 2):
        src, dst = tmp_path / f"g{k}.dcfg", tmp_path / f"g{k}.nf.dcfg"
        write_grammar(emit_example(k), src)
        assert validate(emit_example(k)) == []
        statuses.append(main(["normalize", str(src), "-o", str(dst)], _Sink(), _Sink()))
        statuses.append(main(["equiv", str(src), str(dst), "--max-len", "12"], _Sink(), _Sink()))
    ok = not bad and statuses == [0, 0, 0, 0]
    record(8, ok, f"{2 * len(runs)} files round-trip ({len(bad)} failures); equiv exit codes {statuses}")


class _Sink:
    def write(self, _):
        pass
