"""Replacing function tables by graph predicate tables."""

import itertools
import logging

import numpy as np

from gaugex.structure.gauged import GaugedStructure
from gaugex.syntax.signature import graph_name, graph_signature

logger = logging.getLogger(__name__)


def graph_transform(M: GaugedStructure) -> GaugedStructure:
    """Relational copy of ``M`` with ``G_f(a, b) = d(f(a), b)`` for each function ``f``.

    Returns the structure over :func:`graph_signature`; the graph axiom
    schemes are available from ``graph_signature(M.signature)[1]``.
    """
    sig, _ = graph_signature(M.signature)
    n = M.size
    preds = dict(M.predicates)
    for name, table in M.functions.items():
        arity = table.ndim
        out = np.empty((n,) * (arity + 1), dtype=object)
        for args in itertools.product(range(n), repeat=arity):
            image = int(table[args])
            for b in range(n):
                out[args + (b,)] = M.dist[image, b]
        preds[graph_name(name)] = out
        logger.debug("graph table for %s: arity %d", name, arity + 1)
    return GaugedStructure(sig, M.points, M.dist, M.gauge, preds, {})
