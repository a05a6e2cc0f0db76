"""
Perturbing a basis into a nearby one by an epsilon-isomorphism.

Given independent ``b_1..b_k`` with simplex minimum ``s`` and
``|b_i - c_i| <= delta = s eps / 2k``, the map
``S(x) = sum_i eta_i(x) (b_i - c_i)`` has ``|S| <= eps / 2`` and
``T = I - S`` sends ``b_i`` to ``c_i`` with

    e^-eps |v| <= (1 - eps/2) |v| <= |T v| <= (1 + eps/2) |v| <= e^eps |v|.

The outer inequalities hold for ``eps <= 1/2``; that endpoint is checked
numerically when the module loads.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import numpy as np

from gaugex.banach.lp import as_vectors, check_dual_bound, dual_functionals, simplex_min_norm
from gaugex.banach.norms import DEFAULT_TOL, IsoCheck, NormedSpace, eps_iso_check, exp_bounds, op_norm
from gaugex.core.errors import BanachMazurError

logger = logging.getLogger(__name__)

EPS_MAX = 0.5


def _check_epsilon_chain(eps: float = EPS_MAX) -> None:
    _, e_minus_hi = exp_bounds(-eps)
    e_plus_lo, _ = exp_bounds(eps)
    if not (e_minus_hi <= 1 - eps / 2 and 1 + eps / 2 <= e_plus_lo):
        raise BanachMazurError(f"exponential bounds fail at eps = {eps}")


_check_epsilon_chain()


def _as_float(x) -> float:
    return float(Fraction(x)) if isinstance(x, str) else float(x)


@dataclass(frozen=True)
class Perturbation:
    S: np.ndarray
    T: np.ndarray
    functionals: np.ndarray


def build_perturbation(
    vectors, targets, space: NormedSpace, tol: float = DEFAULT_TOL
) -> Perturbation:
    """``S`` with ``S b_i = b_i - c_i`` and ``T = I - S``.

    Raises
    ------
    DependentVectorsError
        If the ``b_i`` are dependent.
    BanachMazurError
        If ``S b_i`` misses ``b_i - c_i`` by more than ``tol``.
    """
    B = as_vectors(vectors, space)
    C = as_vectors(targets, space)
    if B.shape != C.shape:
        raise BanachMazurError(f"{B.shape[0]} vectors but {C.shape[0]} targets")
    H = dual_functionals(B, space, tol)
    S = (B - C).T @ H
    T = np.identity(space.dim) - S
    residual = np.abs(S @ B.T - (B - C).T).max(initial=0.0)
    if residual > tol:
        raise BanachMazurError(f"S b_i misses b_i - c_i by {residual:.3g}")
    return Perturbation(S, T, H)


def certify_delta(vectors, eps, space: NormedSpace, cap: int = 6, tol: float = DEFAULT_TOL) -> float:
    """Radius ``s eps / 2k`` within which every perturbation is an eps-isomorphism."""
    eps = _as_float(eps)
    if not 0 < eps <= EPS_MAX:
        raise BanachMazurError(f"epsilon must lie in (0, {EPS_MAX}], got {eps}")
    B = as_vectors(vectors, space)
    s = simplex_min_norm(B, space, cap, tol)
    return s * eps / (2 * B.shape[0])


def random_targets(B: np.ndarray, delta: float, space: NormedSpace, rng: np.random.Generator) -> np.ndarray:
    """Points ``c_i`` with ``|b_i - c_i| <= delta``, radius drawn uniformly."""
    out = np.empty_like(B)
    for i, b in enumerate(B):
        direction = rng.standard_normal(space.dim)
        size = space.norm(direction)
        if size == 0:
            direction, size = np.ones(space.dim), space.norm(np.ones(space.dim))
        out[i] = b + direction * (delta * rng.uniform() / size)
    return out


@dataclass
class CertificationReport:
    space: str
    eps: float
    delta: float
    simplex_min: float
    trials: int = 0
    failures: List[int] = field(default_factory=list)
    max_s_norm: float = 0.0
    min_margin: float = np.inf
    tol: float = DEFAULT_TOL

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "space": self.space,
            "eps": self.eps,
            "delta": self.delta,
            "simplex_min": self.simplex_min,
            "trials": self.trials,
            "failures": len(self.failures),
            "max_s_norm": self.max_s_norm,
            "min_margin": self.min_margin,
            "tol": self.tol,
        }


def certify_trials(
    vectors,
    eps,
    space: NormedSpace,
    trials: int = 1000,
    rng: Optional[np.random.Generator] = None,
    tol: float = DEFAULT_TOL,
    cap: int = 6,
) -> CertificationReport:
    """Randomized certification of :func:`certify_delta`.

    Each trial draws targets within ``delta``, builds the perturbation and
    records a failure when ``|S| > eps/2 + tol`` or ``I - S`` is not an
    eps-isomorphism.
    """
    rng = rng or np.random.default_rng(0)
    B = as_vectors(vectors, space)
    eps = _as_float(eps)
    delta = certify_delta(B, eps, space, cap, tol)
    s = simplex_min_norm(B, space, cap, tol)
    check_dual_bound(dual_functionals(B, space, tol), s, space, tol)
    report = CertificationReport(str(space), eps, delta, s, tol=tol)
    for t in range(trials):
        C = random_targets(B, delta, space, rng)
        P = build_perturbation(B, C, space, tol)
        ns = op_norm(P.S, space)
        iso: IsoCheck = eps_iso_check(P.T, eps, space, tol)
        report.trials += 1
        report.max_s_norm = max(report.max_s_norm, ns)
        report.min_margin = min(report.min_margin, iso.upper_margin, iso.lower_margin)
        if ns > eps / 2 + tol or not iso.ok:
            report.failures.append(t)
    logger.info("certified %s at eps=%g: %d/%d trials passed", space, eps, trials - len(report.failures), trials)
    return report
