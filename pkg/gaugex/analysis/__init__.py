"""
Static analysis of formulas: boundedness, eventual constancy, limits and
continuity moduli.
"""

from gaugex.analysis.classify import (
    AnalysisResult,
    Analyzer,
    bound,
    classify,
    is_bounded,
    limit_formula,
    require_well_formed,
    threshold,
    well_formed,
)
from gaugex.analysis.synthesis import synthesize_modulus

__all__ = [
    "AnalysisResult", "Analyzer", "classify", "bound", "is_bounded", "threshold",
    "limit_formula", "well_formed", "require_well_formed", "synthesize_modulus",
]
