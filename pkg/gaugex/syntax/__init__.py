"""
Signatures, terms, formulas, their s-expression syntax, and conditions.
"""

from gaugex.syntax.conditions import (
    EQ,
    EXISTS,
    FORALL,
    LE,
    ApproxScheme,
    Condition,
    GraphScheme,
    Window,
    graph_schemes,
)
from gaugex.syntax.formula import (
    ONE,
    ZERO,
    Add,
    App,
    Atomic,
    Formula,
    Half,
    Inf,
    One,
    Sub,
    Sup,
    Term,
    Var,
    abs_diff,
    dist,
    dyadic_const,
    formula_to_sexpr,
    free_vars,
    nu,
    rename_bound,
    term_to_sexpr,
    times,
    truncate_at,
)
from gaugex.syntax.parse import parse_formula, parse_signature, parse_term
from gaugex.syntax.signature import (
    FUN,
    PRED,
    Signature,
    Symbol,
    banach_signature,
    graph_signature,
    name_constants,
)

__all__ = [
    "Term", "Var", "App", "Formula", "Atomic", "One", "Half", "Add", "Sub", "Sup", "Inf",
    "ONE", "ZERO", "nu", "dist", "times", "dyadic_const", "truncate_at", "abs_diff",
    "free_vars", "rename_bound", "formula_to_sexpr", "term_to_sexpr",
    "parse_formula", "parse_term", "parse_signature",
    "Signature", "Symbol", "PRED", "FUN", "name_constants", "graph_signature", "banach_signature",
    "Condition", "Window", "ApproxScheme", "GraphScheme", "graph_schemes",
    "LE", "EQ", "FORALL", "EXISTS",
]
