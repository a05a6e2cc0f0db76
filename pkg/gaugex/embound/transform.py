"""
Emboundment of gauged structures.

``theta(x) = x / (x + 1)`` squeezes ``[0, inf)`` into ``[0, 1)``. The
embounded structure adds a point at infinity and sets

    d(a, b)   = theta(d(a, b)) / (1 + min(nu(a), nu(b)))
    d(a, inf) = 1 / (1 + nu(a))
    P(a...)   = theta(P(a...)) / (1 + max nu(a_i)),   0 if some a_i is inf

with gauge identically 0. :func:`recover` inverts the construction exactly.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from gaugex.core.errors import EmboundmentError
from gaugex.core.extended import as_fraction, format_value
from gaugex.core.modulus import IDENTITY
from gaugex.structure.gauged import GaugedStructure
from gaugex.syntax.signature import FUN, Signature, Symbol

logger = logging.getLogger(__name__)

INFINITY_CONSTANT = "infty"
DEFAULT_INFINITY_POINT = "oo"

_ONE = Fraction(1)


def theta(q) -> Fraction:
    q = as_fraction(q)
    if q < 0:
        raise EmboundmentError(f"theta needs a nonnegative argument, got {format_value(q)}")
    return q / (q + 1)


def theta_inv(q) -> Fraction:
    q = as_fraction(q)
    if q < 0 or q >= 1:
        raise EmboundmentError(f"theta_inv needs an argument in [0, 1), got {format_value(q)}")
    return q / (1 - q)


@dataclass(frozen=True)
class EmboundedStructure:
    """A bounded structure over ``L + {infty}`` with its point at infinity marked."""

    structure: GaugedStructure
    infinity: str

    @property
    def infinity_index(self) -> int:
        return self.structure.index(self.infinity)

    @property
    def real_indices(self):
        k = self.infinity_index
        return [i for i in range(self.structure.size) if i != k]


def _tuple_gauge(gauge, args) -> Fraction:
    return max((gauge[i] for i in args), default=Fraction(0))


def embounded_signature(sig: Signature) -> Signature:
    if not sig.is_relational:
        raise EmboundmentError("emboundment needs a relational signature; apply the graph transform first")
    return sig.extend([Symbol(INFINITY_CONSTANT, 0, IDENTITY, FUN)])


def embound(M: GaugedStructure, infinity: Optional[str] = None) -> EmboundedStructure:
    """Embounded copy of a relational structure."""
    sig = embounded_signature(M.signature)
    name = infinity or DEFAULT_INFINITY_POINT
    if name in M.points:
        raise EmboundmentError(f"point name '{name}' already used; pass another infinity name")
    n = M.size
    g = M.gauge
    dist = np.empty((n + 1, n + 1), dtype=object)
    for i in range(n):
        for j in range(n):
            dist[i, j] = theta(M.dist[i, j]) / (1 + min(g[i], g[j]))
        dist[i, n] = dist[n, i] = _ONE / (1 + g[i])
    dist[n, n] = Fraction(0)

    preds = {}
    for pname, table in M.predicates.items():
        arity = table.ndim
        out = np.empty((n + 1,) * arity, dtype=object)
        for args in itertools.product(range(n + 1), repeat=arity):
            if n in args:
                out[args] = Fraction(0)
            else:
                out[args] = theta(table[args]) / (1 + _tuple_gauge(g, args))
        preds[pname] = out

    N = GaugedStructure(
        sig,
        list(M.points) + [name],
        dist,
        [Fraction(0)] * (n + 1),
        preds,
        {INFINITY_CONSTANT: np.array(n, dtype=np.int64)},
    )
    logger.debug("embounded %d points, infinity '%s'", n, name)
    return EmboundedStructure(N, name)


def as_embounded(N: GaugedStructure, infinity: Optional[str] = None) -> EmboundedStructure:
    """Mark the point at infinity of a loaded structure.

    Without a name the interpretation of the ``infty`` constant is used.
    """
    if infinity is None:
        if INFINITY_CONSTANT not in N.functions:
            raise EmboundmentError("no infinity point given and no 'infty' constant in the signature")
        infinity = N.points[N.apply(INFINITY_CONSTANT, ())]
    N.index(infinity)
    return EmboundedStructure(N, infinity)


def recover(E: EmboundedStructure) -> GaugedStructure:
    """Reconstruct the original structure from its emboundment.

    Raises
    ------
    EmboundmentError
        If a point sits at distance 0 from infinity or a reconstructed
        theta argument leaves ``[0, 1)``.
    """
    N = E.structure
    k = E.infinity_index
    real = E.real_indices
    points = [N.points[i] for i in real]
    n = len(real)

    gauge = []
    for i in real:
        to_inf = N.dist[i, k]
        if to_inf <= 0:
            raise EmboundmentError(f"point '{N.points[i]}' is at distance 0 from infinity")
        gauge.append(_ONE / to_inf - 1)
    for i, v in zip(real, gauge):
        if v < 0:
            raise EmboundmentError(f"point '{N.points[i]}' is farther than 1 from infinity")

    def invert(value, scale, where):
        try:
            return theta_inv(value * scale)
        except EmboundmentError:
            raise EmboundmentError(f"cannot invert theta at {where}") from None

    dist = np.empty((n, n), dtype=object)
    for a, i in enumerate(real):
        for b, j in enumerate(real):
            dist[a, b] = invert(N.dist[i, j], 1 + min(gauge[a], gauge[b]), f"d({N.points[i]}, {N.points[j]})")

    preds = {}
    for pname, table in N.predicates.items():
        arity = table.ndim
        out = np.empty((n,) * arity, dtype=object)
        for args in itertools.product(range(n), repeat=arity):
            src = tuple(real[a] for a in args)
            out[args] = invert(table[src], 1 + _tuple_gauge(gauge, args), f"{pname}{args}")
        preds[pname] = out

    sig = N.signature.without([INFINITY_CONSTANT])
    if not sig.is_relational:
        raise EmboundmentError("embounded structure carries function symbols")
    return GaugedStructure(sig, points, dist, gauge, preds, {})


def naive_theta_transform(M: GaugedStructure) -> GaugedStructure:
    """Apply ``theta`` to every table, distance and gauge included.

    The result is a metric structure since ``theta`` is subadditive and
    increasing; its symbols keep their declared moduli, which need not hold.
    """
    vtheta = np.frompyfunc(theta, 1, 1)

    def mapped(arr):
        out = vtheta(arr) if arr.ndim else np.array(theta(arr[()]), dtype=object)
        return np.asarray(out, dtype=object)

    preds = {name: mapped(t) for name, t in M.predicates.items()}
    return GaugedStructure(M.signature, M.points, mapped(M.dist), mapped(M.gauge), preds, M.functions)
