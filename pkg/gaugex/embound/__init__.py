"""
Emboundment: a bounded structure with one point at infinity, and back.
"""

from gaugex.embound.checks import check_comparison, check_embound, theta_subadditivity_grid
from gaugex.embound.transform import (
    DEFAULT_INFINITY_POINT,
    INFINITY_CONSTANT,
    EmboundedStructure,
    as_embounded,
    embound,
    naive_theta_transform,
    recover,
    theta,
    theta_inv,
)

__all__ = [
    "theta", "theta_inv", "EmboundedStructure", "embound", "as_embounded", "recover",
    "naive_theta_transform", "check_comparison", "check_embound", "theta_subadditivity_grid",
    "INFINITY_CONSTANT", "DEFAULT_INFINITY_POINT",
]
