"""Displacement context-free grammars over string tuples and normal forms for linear ones."""
from .grammar import (
    Difference,
    Grammar,
    GrammarError,
    LanguageTable,
    Nonterminal,
    Rule,
    emit_example,
    enumerate_language,
    equiv_up_to,
    is_linear,
    validate,
)
from .syntax import format_grammar, format_term, parse_grammar, parse_term
from .tuples import StringTuple

__version__ = "0.1.0"
