"""
Restricted quantification as a macro over the basic connectives.

``build_down(phi, x, r, r')`` agrees with ``phi`` while ``nu(x) <= r`` and
vanishes once ``nu(x) >= r'``. It computes ``phi - k 2^m (nu(x) - s)``
with ``s = l 2^-m`` taken from :func:`dyadic_window`, written so that the
dedicated gauge rule of the analyzer recognizes eventual constancy in ``x``:

    a - (nu - s)  ==  (a + min(nu, s)) - nu        for a >= 0

is applied ``k`` times to ``phi / 2^m`` and the result doubled ``m`` times.
"""

import logging
import math
from fractions import Fraction
from typing import Tuple

from gaugex.analysis.classify import Analyzer
from gaugex.core.errors import WindowError
from gaugex.core.extended import as_fraction
from gaugex.syntax.formula import (
    Add,
    Formula,
    Inf,
    Sub,
    Sup,
    dyadic_const,
    halve,
    nu,
    times,
    truncate_at,
)

logger = logging.getLogger(__name__)


def dyadic_window(r, r_prime) -> Tuple[int, Fraction]:
    """Least ``m`` with a dyadic ``s = l 2^-m`` such that ``r <= s`` and ``s + 2^-m <= r'``.

    ``l`` is ``ceil(r 2^m)``, so ``s`` is the least admissible value at that ``m``.
    """
    r, r_prime = as_fraction(r), as_fraction(r_prime)
    if r <= 0 or r >= r_prime:
        raise WindowError(f"need 0 < r < r', got r={r}, r'={r_prime}")
    m = 0
    while True:
        scale = 2 ** m
        ell = math.ceil(r * scale)
        if Fraction(ell + 1, scale) <= r_prime:
            return m, Fraction(ell, scale)
        m += 1


def _prepare(phi: Formula, analyzer: Analyzer) -> Tuple[Formula, int]:
    info = analyzer.info(phi)
    if not info.bounded:
        phi = truncate_at(phi, 1)
        info = analyzer.info(phi)
    return phi, max(1, math.ceil(info.bound))


def build_down(phi: Formula, x: str, r, r_prime, analyzer: Analyzer = None) -> Formula:
    """``phi`` cut off outside the gauge window of ``x``.

    Unbounded ``phi`` is first truncated at 1.
    """
    an = analyzer or Analyzer()
    phi, k = _prepare(phi, an)
    m, s = dyadic_window(r, r_prime)
    g = nu(x)
    capped = truncate_at(g, s)
    chi = halve(phi, m)
    for _ in range(k):
        chi = Sub(Add(chi, capped), g)
    out = times(chi, 2 ** m)
    logger.debug("build_down on %s: k=%d m=%d s=%s", x, k, m, s)
    return out


def build_up(phi: Formula, x: str, r, r_prime, analyzer: Analyzer = None) -> Formula:
    """Dual of :func:`build_down`: ``phi`` inside the window, ``k`` beyond it.

    Computed as ``k - (k - phi)`` with the inner difference cut off.
    """
    an = analyzer or Analyzer()
    phi, k = _prepare(phi, an)
    K = dyadic_const(k, 0)
    return Sub(K, build_down(Sub(K, phi), x, r, r_prime, an))


def sup_window(phi: Formula, x: str, r, r_prime) -> Formula:
    """``sup_x`` over points of gauge at most ``r``, blurred up to ``r'``."""
    return Sup(x, build_down(phi, x, r, r_prime))


def inf_window(phi: Formula, x: str, r, r_prime) -> Formula:
    return Inf(x, build_up(phi, x, r, r_prime))
