"""
Concrete models: finite measure algebras and sampled normed spaces.
"""

import itertools
import logging
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from gaugex.core.errors import CapExceededError, StructureError
from gaugex.core.extended import as_fraction, format_value
from gaugex.core.modulus import IDENTITY, StandardArity
from gaugex.structure.gauged import GaugedStructure
from gaugex.syntax.signature import (
    FUN,
    Signature,
    Symbol,
    banach_signature,
    graph_name,
    graph_signature,
    scalar_name,
)

logger = logging.getLogger(__name__)

DEFAULT_SCALARS = (Fraction(-1), Fraction(1, 2), Fraction(2))


# ----------------------------------------------------------------------
# Measure algebras
# ----------------------------------------------------------------------


def measure_algebra_signature() -> Signature:
    """``zero`` and the binary lattice operations ``join``, ``meet``, ``minus``."""
    binary = StandardArity(2)
    return Signature(
        [
            Symbol("zero", 0, IDENTITY, FUN),
            Symbol("join", 2, binary, FUN),
            Symbol("meet", 2, binary, FUN),
            Symbol("minus", 2, binary, FUN),
        ]
    )


def measure_algebra(weights: Sequence, cap: int = 4) -> GaugedStructure:
    """Algebra of all subsets of ``{0, ..., k-1}`` with the measure given by ``weights``.

    Points are named by membership bit strings (``m01`` contains atom 1 only);
    ``d`` is the measure of the symmetric difference and ``nu`` the measure.

    Raises
    ------
    CapExceededError
        More than ``cap`` atoms.
    """
    weights = [as_fraction(w) for w in weights]
    if not weights:
        raise StructureError("measure algebra needs at least one atom")
    if any(w <= 0 for w in weights):
        raise StructureError("atom weights must be positive")
    k = len(weights)
    if k > cap:
        raise CapExceededError(f"{k} atoms exceed the cap of {cap} ({2 ** k} points)")
    size = 2 ** k

    def mu(mask: int) -> Fraction:
        return sum((w for j, w in enumerate(weights) if mask >> j & 1), Fraction(0))

    names = ["m" + "".join("1" if mask >> j & 1 else "0" for j in range(k)) for mask in range(size)]
    measure = [mu(mask) for mask in range(size)]
    dist = np.empty((size, size), dtype=object)
    for a, b in itertools.product(range(size), repeat=2):
        dist[a, b] = measure[a ^ b]
    full = size - 1
    grid = np.indices((size, size))
    functions = {
        "zero": np.array(0, dtype=np.int64),
        "join": grid[0] | grid[1],
        "meet": grid[0] & grid[1],
        "minus": grid[0] & (full ^ grid[1]),
    }
    logger.debug("measure algebra with weights %s", [format_value(w) for w in weights])
    return GaugedStructure(measure_algebra_signature(), names, dist, measure, {}, functions)


# ----------------------------------------------------------------------
# Sampled normed spaces
# ----------------------------------------------------------------------


def _norm(v: Sequence[Fraction], p) -> Fraction:
    if p == 1:
        return sum((abs(x) for x in v), Fraction(0))
    return max((abs(x) for x in v), default=Fraction(0))


def _point_name(v: Sequence[Fraction]) -> str:
    return "v<" + ",".join(format_value(x) for x in v) + ">"


def sampled_normed_structure(
    dim: int,
    p="inf",
    radius: int = 1,
    grid: int = 1,
    scalars: Sequence = DEFAULT_SCALARS,
    cap: int = 125,
) -> GaugedStructure:
    """Lattice points ``k / grid`` with ``|k| <= grid * radius`` of ``(Q^dim, l_p)``.

    The structure is relational: ``G_zero(y) = |y|``, ``G_plus(x, y, z) =
    |x + y - z|`` and ``G_scale_r(x, y) = |r x - y|`` are computed in the
    ambient space, so they are total even where the sample is not closed.
    """
    if p in ("inf", "oo", float("inf")):
        p = "inf"
    elif p not in (1, "1"):
        raise StructureError(f"norm must be l1 or linf, got {p!r}")
    else:
        p = 1
    if dim < 1 or radius < 1 or grid < 1:
        raise StructureError("dim, radius and grid must be positive")
    side = 2 * grid * radius + 1
    count = side ** dim
    if count > cap:
        raise CapExceededError(f"{count} sample points exceed the cap of {cap}")
    coords = [Fraction(k, grid) for k in range(-grid * radius, grid * radius + 1)]
    logger.debug("sampled l%s^%d: %d points", p, dim, count)
    return normed_structure_from_points(itertools.product(coords, repeat=dim), p, scalars)


def normed_structure_from_points(
    points: Iterable[Sequence], p="inf", scalars: Optional[Sequence] = None
) -> GaugedStructure:
    """Graph-relational normed structure on an explicit finite point set."""
    scalars = DEFAULT_SCALARS if scalars is None else scalars
    pts = [tuple(as_fraction(x) for x in v) for v in points]
    if len({len(v) for v in pts}) > 1:
        raise StructureError("points must share a dimension")
    if len(set(pts)) != len(pts):
        raise StructureError("points must be distinct")
    pnorm = 1 if p in (1, "1") else "inf"
    n = len(pts)
    dist = np.empty((n, n), dtype=object)
    for i, j in itertools.product(range(n), repeat=2):
        dist[i, j] = _norm(tuple(a - b for a, b in zip(pts[i], pts[j])), pnorm)
    gauge = [_norm(v, pnorm) for v in pts]
    preds = {graph_name("zero"): np.array(gauge, dtype=object)}
    plus = np.empty((n, n, n), dtype=object)
    for i, j, k in itertools.product(range(n), repeat=3):
        plus[i, j, k] = _norm(tuple(a + b - c for a, b, c in zip(pts[i], pts[j], pts[k])), pnorm)
    preds[graph_name("plus")] = plus
    for r in scalars:
        r = as_fraction(r)
        table = np.empty((n, n), dtype=object)
        for i, j in itertools.product(range(n), repeat=2):
            table[i, j] = _norm(tuple(r * a - b for a, b in zip(pts[i], pts[j])), pnorm)
        preds[graph_name(scalar_name(r))] = table
    sig, _ = graph_signature(banach_signature(scalars))
    return GaugedStructure(sig, [_point_name(v) for v in pts], dist, gauge, preds, {})
