"""
Finite-dimensional l1/linf spaces and the perturbation lemma behind the
Banach-Mazur epsilon-isomorphism steps.
"""

from gaugex.banach.lp import dual_functionals, simplex_min, simplex_min_norm, simplex_min_norm_grid
from gaugex.banach.norms import L1, LINF, IsoCheck, NormedSpace, eps_iso_check, exp_bounds, op_norm
from gaugex.banach.perturbation import (
    CertificationReport,
    Perturbation,
    build_perturbation,
    certify_delta,
    certify_trials,
)

__all__ = [
    "NormedSpace", "L1", "LINF", "op_norm", "eps_iso_check", "IsoCheck", "exp_bounds",
    "simplex_min", "simplex_min_norm", "simplex_min_norm_grid", "dual_functionals",
    "Perturbation", "build_perturbation", "certify_delta", "certify_trials", "CertificationReport",
]
