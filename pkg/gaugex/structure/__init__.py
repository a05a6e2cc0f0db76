"""
Finite gauged structures and what is computed on them: validation, exact
evaluation, restricted quantifier macros, prenex forms, principal
ultraproducts and the graph transform.
"""

from gaugex.structure.evaluate import Evaluator, eval_formula, eval_term, evaluation_table
from gaugex.structure.gauged import GaugedStructure, validate
from gaugex.structure.graph import graph_transform
from gaugex.structure.macros import build_down, build_up, dyadic_window, inf_window, sup_window
from gaugex.structure.prenex import is_prenex, prenex, quantifier_prefix
from gaugex.structure.ultraproduct import los_check, principal_ultraproduct

__all__ = [
    "GaugedStructure", "validate", "Evaluator", "eval_term", "eval_formula", "evaluation_table",
    "dyadic_window", "build_down", "build_up", "sup_window", "inf_window",
    "prenex", "quantifier_prefix", "is_prenex",
    "principal_ultraproduct", "los_check", "graph_transform",
]
