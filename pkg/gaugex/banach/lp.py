"""
Linear programs for the simplex minimum and norm-minimal dual functionals.

Both norms are polyhedral, so minimizing ``|v|`` over an affine family is
an LP after adding epigraph variables: one bound ``t`` for linf, one slack
``u_j`` per coordinate for l1.
"""

import itertools
import logging
from typing import List, Tuple

import numpy as np
from scipy.optimize import linprog

from gaugex.banach.norms import DEFAULT_TOL, L1, NormedSpace, vector_norm
from gaugex.core.errors import BanachMazurError, CapExceededError, DependentVectorsError

logger = logging.getLogger(__name__)


def as_vectors(vectors, space: NormedSpace) -> np.ndarray:
    B = np.atleast_2d(np.asarray(vectors, dtype=float))
    if B.shape[1] != space.dim:
        raise BanachMazurError(f"vectors of length {B.shape[1]} do not live in {space}")
    return B


def _check_independent(B: np.ndarray, tol: float) -> None:
    if B.shape[0] > B.shape[1] or np.linalg.matrix_rank(B, tol=tol) < B.shape[0]:
        raise DependentVectorsError(f"{B.shape[0]} vectors in dimension {B.shape[1]} are linearly dependent")


def _epigraph(M: np.ndarray, kind: str) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Objective and ``A_ub x <= 0`` rows bounding ``|M z|`` for variables ``(z, aux)``."""
    n, m = M.shape
    if kind == L1:
        aux = np.identity(n)
        c = np.concatenate([np.zeros(m), np.ones(n)])
    else:
        aux = np.ones((n, 1))
        c = np.concatenate([np.zeros(m), [1.0]])
    A_ub = np.concatenate([np.concatenate([M, -aux], 1), np.concatenate([-M, -aux], 1)], 0)
    return c, A_ub, np.zeros(2 * n)


def _orthant_min(B: np.ndarray, signs: np.ndarray, kind: str) -> Tuple[float, np.ndarray]:
    k, n = B.shape
    M = (B * signs[:, None]).T
    c, A_ub, b_ub = _epigraph(M, kind)
    aux = len(c) - k
    A_eq = np.concatenate([np.ones((1, k)), np.zeros((1, aux))], 1)
    bounds = [(0, None)] * k + [(0, None)] * aux
    result = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=bounds, method="highs")
    if not result.success:
        raise BanachMazurError(f"simplex LP failed: {result.message}")
    lam = signs * result.x[:k]
    return float(result.fun), lam


def simplex_min(vectors, space: NormedSpace, cap: int = 6, tol: float = DEFAULT_TOL) -> Tuple[float, np.ndarray]:
    """Minimum of ``|sum lam_i b_i|`` over ``sum |lam_i| = 1`` and a minimizer.

    One LP per sign pattern with the first sign fixed to +1, since the
    norm is symmetric.
    """
    B = as_vectors(vectors, space)
    k = B.shape[0]
    if k > cap:
        raise CapExceededError(f"{k} vectors exceed the simplex cap of {cap}")
    _check_independent(B, tol)
    best, arg = np.inf, None
    for tail in itertools.product((1.0, -1.0), repeat=k - 1):
        signs = np.array((1.0,) + tail)
        value, lam = _orthant_min(B, signs, space.kind)
        if value < best:
            best, arg = value, lam
    if best <= tol:
        raise DependentVectorsError("minimal simplex norm is 0")
    logger.debug("simplex_min over %d orthants: %.12g", 2 ** (k - 1), best)
    return best, arg


def simplex_min_norm(vectors, space: NormedSpace, cap: int = 6, tol: float = DEFAULT_TOL) -> float:
    return simplex_min(vectors, space, cap, tol)[0]


def simplex_min_norm_grid(
    vectors, space: NormedSpace, resolution: int = 16, rounds: int = 40, floor: float = 1e-13
) -> float:
    """Grid estimate of :func:`simplex_min_norm` by homothetic zoom.

    On each orthant the first ``k - 1`` simplex weights are sampled on a box
    grid; each round recenters the box on the best sample and shrinks it to
    one grid step either side.
    """
    B = as_vectors(vectors, space)
    k = B.shape[0]
    if k == 1:
        return float(vector_norm(B[0], space.kind))
    best_all = np.inf
    for tail in itertools.product((1.0, -1.0), repeat=k - 1):
        signs = np.array((1.0,) + tail)
        SB = B * signs[:, None]
        lo, hi = np.zeros(k - 1), np.ones(k - 1)
        best = np.inf
        for _ in range(rounds):
            axes = [np.linspace(a, b, resolution + 1) for a, b in zip(lo, hi)]
            mu = np.array(list(itertools.product(*axes)))
            last = 1.0 - mu.sum(axis=1)
            keep = last >= -1e-15
            mu, last = mu[keep], np.clip(last[keep], 0.0, None)
            weights = np.concatenate([mu, last[:, None]], 1)
            values = weights @ SB
            norms = np.abs(values).sum(axis=1) if space.kind == L1 else np.abs(values).max(axis=1)
            i = int(np.argmin(norms))
            best = min(best, float(norms[i]))
            step = (hi - lo) / resolution
            if step.max() < floor:
                break
            lo = np.clip(mu[i] - step, 0.0, 1.0)
            hi = np.clip(mu[i] + step, 0.0, 1.0)
        best_all = min(best_all, best)
    return best_all


def dual_functionals(vectors, space: NormedSpace, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Covectors ``eta_i`` with ``eta_i(b_j) = [i == j]`` of least dual norm.

    Row ``i`` of the result is ``eta_i``. The dual of l1 is linf and vice
    versa, so each minimization is an LP.
    """
    B = as_vectors(vectors, space)
    k, n = B.shape
    _check_independent(B, tol)
    dual = space.dual_kind
    out = np.empty((k, n))
    for i in range(k):
        c, A_ub, b_ub = _epigraph(np.identity(n), dual)
        aux = len(c) - n
        A_eq = np.concatenate([B, np.zeros((k, aux))], 1)
        b_eq = np.zeros(k)
        b_eq[i] = 1.0
        bounds = [(None, None)] * n + [(0, None)] * aux
        result = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
        if not result.success:
            raise BanachMazurError(f"dual functional LP {i} failed: {result.message}")
        eta = result.x[:n]
        # project back onto B eta = e_i
        eta = eta - B.T @ np.linalg.solve(B @ B.T, B @ eta - b_eq)
        out[i] = eta
    return out


def check_dual_bound(H: np.ndarray, s: float, space: NormedSpace, tol: float = DEFAULT_TOL) -> List[float]:
    """Dual norms of the rows of ``H``; warns when one exceeds ``1 / s`` beyond ``tol``."""
    norms = [float(vector_norm(h, space.dual_kind)) for h in H]
    for i, v in enumerate(norms):
        if v > 1.0 / s + tol:
            logger.warning("dual functional %d has norm %.12g > 1/s = %.12g", i, v, 1.0 / s)
    return norms
