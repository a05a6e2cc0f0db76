"""
Finite-dimensional l1 / linf spaces, operator norms and epsilon-isomorphisms.

Operator norms have closed forms: the l1 operator norm is the largest
column absolute sum, the linf one the largest row absolute sum. Object
arrays of Fractions give exact results, float arrays float results.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

import numpy as np

from gaugex.core.errors import BanachMazurError, SingularMapError

logger = logging.getLogger(__name__)

L1 = "l1"
LINF = "linf"
KINDS = (L1, LINF)

DEFAULT_TOL = 1e-9

Number = Union[float, Fraction]


@dataclass(frozen=True)
class NormedSpace:
    """``R^dim`` with the l1 or linf norm."""

    dim: int
    kind: str = L1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BanachMazurError(f"unsupported norm kind '{self.kind}', expected one of {KINDS}")
        if self.dim < 1:
            raise BanachMazurError(f"dimension must be at least 1, got {self.dim}")

    @classmethod
    def parse(cls, text: str) -> "NormedSpace":
        """Read ``"l1:3"`` or ``"linf:2"``."""
        try:
            kind, dim = text.strip().split(":")
            kind = {"l1": L1, "linf": LINF, "loo": LINF, "l_inf": LINF}[kind.lower()]
            return cls(int(dim), kind)
        except (ValueError, KeyError):
            raise BanachMazurError(f"cannot read normed space '{text}', expected e.g. 'l1:3'") from None

    @property
    def dual_kind(self) -> str:
        return LINF if self.kind == L1 else L1

    @property
    def dual(self) -> "NormedSpace":
        return NormedSpace(self.dim, self.dual_kind)

    def norm(self, v) -> Number:
        return vector_norm(v, self.kind)

    def dual_norm(self, v) -> Number:
        return vector_norm(v, self.dual_kind)

    def __str__(self):
        return f"{self.kind}:{self.dim}"


def vector_norm(v, kind: str) -> Number:
    v = np.asarray(v)
    if v.dtype == object:
        absolute = [abs(x) for x in v.ravel()]
        if kind == L1:
            return sum(absolute, Fraction(0))
        return max(absolute, default=Fraction(0))
    if kind == L1:
        return float(np.abs(v).sum())
    return float(np.abs(v).max(initial=0.0))


def op_norm(A, space: NormedSpace) -> Number:
    """Operator norm of ``A`` on ``space``."""
    A = np.asarray(A)
    if A.ndim != 2:
        raise BanachMazurError(f"linear map must be a matrix, got shape {A.shape}")
    axis = 0 if space.kind == L1 else 1
    if A.dtype == object:
        sums = [sum((abs(x) for x in line), Fraction(0)) for line in (A.T if axis == 0 else A)]
        return max(sums, default=Fraction(0))
    return float(np.abs(A).sum(axis=axis).max(initial=0.0))


def exp_bounds(x: float) -> Tuple[float, float]:
    """Floats ``lo <= e^x <= hi`` one ulp either side of the rounded value."""
    e = math.exp(float(x))
    return float(np.nextafter(e, -np.inf)), float(np.nextafter(e, np.inf))


def inverse(A, tol: float = DEFAULT_TOL) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.shape[0] != A.shape[1]:
        raise SingularMapError(f"map of shape {A.shape} is not square")
    if not np.all(np.isfinite(A)) or np.linalg.cond(A) * tol > 1:
        raise SingularMapError("map is singular within tolerance")
    return np.linalg.inv(A)


@dataclass(frozen=True)
class IsoCheck:
    """Outcome of :func:`eps_iso_check`.

    Margins are ``e^eps`` (rounded down) minus the operator norm of the map
    and of its inverse; a check passes when both are ``>= -tol``.
    """

    ok: bool
    upper_margin: float
    lower_margin: float
    norm: float
    inverse_norm: float
    tol: float

    def __bool__(self) -> bool:
        return self.ok


def eps_iso_check(f, eps, space: NormedSpace, tol: float = DEFAULT_TOL) -> IsoCheck:
    """Is ``f`` an ``eps``-isomorphism of ``space`` onto itself?

    Uses ``sup |fv| = |f|`` and ``inf |fv| = 1 / |f^-1|`` over unit vectors.
    """
    eps = float(eps)
    if eps < 0:
        raise BanachMazurError(f"epsilon must be nonnegative, got {eps}")
    F = np.asarray(f, dtype=float)
    if F.shape != (space.dim, space.dim):
        raise BanachMazurError(f"map of shape {F.shape} does not act on {space}")
    Finv = inverse(F, tol)
    bound, _ = exp_bounds(eps)
    nf, ninv = op_norm(F, space), op_norm(Finv, space)
    up, low = bound - nf, bound - ninv
    ok = up >= -tol and low >= -tol
    logger.debug("eps_iso_check eps=%g: |f|=%.12g |f^-1|=%.12g ok=%s", eps, nf, ninv, ok)
    return IsoCheck(ok, up, low, nf, ninv, tol)
