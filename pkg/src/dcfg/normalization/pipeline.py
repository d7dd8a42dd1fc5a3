"""The full normal-form pipeline."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..grammar import Grammar
from .bridges import run_pass3
from .derived import PassResult
from .epsilon import run_pass2
from .strip import run_pass4
from .wellformed import run_pass1

PASSES = ("wellformed", "eps", "bridges", "strip")


@dataclass
class PipelineRun:
    """Intermediate grammars of a pipeline run, keyed by pass name."""

    results: dict[str, list[PassResult]] = field(default_factory=dict)

    @property
    def grammar(self) -> Grammar:
        return list(self.results.values())[-1][-1].grammar

    def trace(self) -> list[str]:
        lines = []
        for name, parts in self.results.items():
            lines.append(f"! pass {name}")
            for part in parts:
                lines += part.trace()
        return lines


def run_pipeline(g: Grammar, upto: str = "strip", start: str = "wellformed") -> PipelineRun:
    """Run passes ``start`` through ``upto`` in order."""
    run = PipelineRun()
    steps = {
        "wellformed": lambda h: [run_pass1(h)],
        "eps": lambda h: [run_pass2(h)],
        "bridges": lambda h: [run_pass3(h)],
        "strip": lambda h: list(run_pass4(h)),
    }
    first, last = PASSES.index(start), PASSES.index(upto)
    for name in PASSES[first : last + 1]:
        parts = steps[name](g)
        run.results[name] = parts
        g = parts[-1].grammar
    return run


def normalize(g: Grammar) -> Grammar:
    return run_pipeline(g).grammar
