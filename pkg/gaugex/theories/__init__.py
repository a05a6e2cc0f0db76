"""
Theories and their shipped instances (measure algebras, Banach spaces,
function graphs), with the concrete models they are checked against.
"""

from gaugex.theories.models import measure_algebra, normed_structure_from_points, sampled_normed_structure
from gaugex.theories.theory import (
    DefectReport,
    Theory,
    check_theory,
    instantiate_scheme,
    load_shipped_theory,
    load_theory,
    load_theory_file,
    matrix_sup,
)

__all__ = [
    "Theory", "load_theory", "load_theory_file", "load_shipped_theory", "instantiate_scheme",
    "check_theory", "matrix_sup", "DefectReport",
    "measure_algebra", "sampled_normed_structure", "normed_structure_from_points",
]
