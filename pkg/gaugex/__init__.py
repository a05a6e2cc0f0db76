"""
gaugex: unbounded continuous logic over gauged metric structures.

Formulas with exact rational semantics over finite gauged structures,
syntactic boundedness and eventual-constancy analysis, restricted
quantifier macros, emboundment, approximate theories and the
Banach-Mazur perturbation lemma for l1/linf spaces.
"""

__version__ = "0.1.0"

from gaugex.analysis import bound, classify, limit_formula, synthesize_modulus, threshold, well_formed
from gaugex.core import INF, ContinuityModulus, GaugexError, respects_check
from gaugex.embound import embound, recover, theta, theta_inv
from gaugex.io import load_config, load_structure
from gaugex.structure import (
    GaugedStructure,
    eval_formula,
    eval_term,
    inf_window,
    prenex,
    principal_ultraproduct,
    sup_window,
    validate,
)
from gaugex.syntax import Signature, parse_formula
from gaugex.theories import check_theory, load_theory, measure_algebra

__all__ = [
    # Core
    "INF", "ContinuityModulus", "GaugexError", "respects_check",
    # Syntax and analysis
    "Signature", "parse_formula", "classify", "bound", "threshold", "limit_formula",
    "synthesize_modulus", "well_formed",
    # Structures
    "GaugedStructure", "validate", "eval_term", "eval_formula", "sup_window", "inf_window",
    "prenex", "principal_ultraproduct",
    # Emboundment and theories
    "embound", "recover", "theta", "theta_inv", "load_theory", "check_theory", "measure_algebra",
    # IO
    "load_config", "load_structure",
]
