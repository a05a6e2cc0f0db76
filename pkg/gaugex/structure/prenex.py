"""Prenex normal form."""

import logging
from typing import List, Tuple

from gaugex.analysis.classify import require_well_formed
from gaugex.syntax.formula import (
    Add,
    Formula,
    Half,
    Quantifier,
    Sub,
    dual,
    is_quantifier_free,
    quantifier,
    rename_bound,
)

logger = logging.getLogger(__name__)

Prefix = List[Tuple[str, str]]


def _pull(phi: Formula) -> Tuple[Prefix, Formula]:
    if is_quantifier_free(phi):
        return [], phi
    if isinstance(phi, Quantifier):
        prefix, matrix = _pull(phi.body)
        return [(phi.keyword, phi.var)] + prefix, matrix
    if isinstance(phi, Half):
        prefix, matrix = _pull(phi.body)
        return prefix, Half(matrix)
    if isinstance(phi, Add):
        pl, ml = _pull(phi.left)
        pr, mr = _pull(phi.right)
        return pl + pr, Add(ml, mr)
    if isinstance(phi, Sub):
        # antitone in the right argument
        pl, ml = _pull(phi.left)
        pr, mr = _pull(phi.right)
        return pl + [(dual(q), x) for q, x in pr], Sub(ml, mr)
    raise TypeError(f"not a formula node: {phi!r}")


def prenex(phi: Formula) -> Formula:
    """Equivalent formula with all quantifiers in front.

    Binders are renamed apart first, so pulling a quantifier over a sibling
    never captures. Evaluation is preserved exactly, the point at infinity
    included, and the output is well-formed.
    """
    require_well_formed(phi)
    prefix, matrix = _pull(rename_bound(phi))
    out = matrix
    for keyword, var in reversed(prefix):
        out = quantifier(keyword, var, out)
    logger.debug("prenex prefix: %s", " ".join(f"{q} {x}" for q, x in prefix))
    return out


def quantifier_prefix(phi: Formula) -> Prefix:
    """Leading quantifier block of ``phi``."""
    out: Prefix = []
    while isinstance(phi, Quantifier):
        out.append((phi.keyword, phi.var))
        phi = phi.body
    return out


def is_prenex(phi: Formula) -> bool:
    while isinstance(phi, Quantifier):
        phi = phi.body
    return is_quantifier_free(phi)
