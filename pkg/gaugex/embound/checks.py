"""Comparison lemmas and the aggregated emboundment check."""

import itertools
import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from gaugex.core.extended import format_value
from gaugex.core.report import CheckReport, Violation
from gaugex.embound.transform import embound, recover, theta
from gaugex.structure.gauged import GaugedStructure, validate

logger = logging.getLogger(__name__)

_EXTRA_RADII = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4))
_STEPS = (Fraction(1, 2), Fraction(1), Fraction(2))


def default_radius_pairs(M: GaugedStructure) -> List[Tuple[Fraction, Fraction]]:
    """Pairs ``r < r'`` built from the gauges of ``M`` and a few fixed radii."""
    rs = sorted(set(M.gauge.tolist()) | set(_EXTRA_RADII))
    return [(r, r + step) for r in rs for step in _STEPS]


def check_comparison(
    M: GaugedStructure, radius_pairs: Optional[Iterable[Tuple[Fraction, Fraction]]] = None
) -> CheckReport:
    """Distances shrink under emboundment, and small embounded balls stay gauge-bounded.

    For each ``r < r'`` every point at embounded distance below
    ``theta(r' - r) / (1 + r)`` from a point of gauge at most ``r`` must
    have gauge below ``r'``. The point at infinity is included and never
    qualifies.
    """
    E = embound(M)
    N = E.structure
    P = M.points
    n = M.size
    report = CheckReport(subject="embound comparison")
    for i, j in itertools.product(range(n), repeat=2):
        report.count("pairs")
        if M.dist[i, j] < N.dist[i, j]:
            report.add(
                Violation(
                    "distance-shrinks",
                    (P[i], P[j]),
                    f"d={format_value(M.dist[i, j])} < embounded {format_value(N.dist[i, j])}",
                )
            )
    pairs = default_radius_pairs(M) if radius_pairs is None else list(radius_pairs)
    k = E.infinity_index
    for r, r_prime in pairs:
        radius = theta(r_prime - r) / (1 + r)
        report.count("radii")
        for a in range(n):
            if M.gauge[a] > r:
                continue
            for b in range(n + 1):
                if N.dist[a, b] >= radius:
                    continue
                if b == k or M.gauge[b] >= r_prime:
                    who = N.points[b]
                    report.add(
                        Violation(
                            "ball-containment",
                            (P[a], who),
                            f"r={format_value(r)}, r'={format_value(r_prime)}, radius {format_value(radius)}",
                        )
                    )
    return report


def theta_subadditivity_grid(size: int = 10, denominator: int = 4) -> CheckReport:
    """``theta(x + y) <= theta(x) + theta(y)`` on ``{0, ..., size} / denominator``."""
    grid = [Fraction(i, denominator) for i in range(size + 1)]
    report = CheckReport(subject="theta subadditivity")
    for x, y in itertools.product(grid, repeat=2):
        report.count("pairs")
        if theta(x + y) > theta(x) + theta(y):
            report.add(Violation("subadditive", (format_value(x), format_value(y)), "theta(x+y) > theta(x)+theta(y)"))
    return report


def check_embound(M: GaugedStructure) -> CheckReport:
    """Every emboundment property on one structure.

    Metric axioms of the embounded distance on all triples (infinity
    included) with the bound 1, vanishing of predicates at infinity, the
    comparison lemma, strict decrease of the distance to infinity in the
    gauge, and the exact round trip through :func:`recover`.
    """
    E = embound(M)
    N = E.structure
    k = E.infinity_index
    report = CheckReport(subject="check-embound")
    for v in validate(N, check_moduli=False).violations:
        report.add(Violation(f"embounded:{v.check}", v.witness, v.detail))
    for i, j in itertools.product(range(N.size), repeat=2):
        if N.dist[i, j] > 1:
            report.add(Violation("bounded-by-1", (N.points[i], N.points[j]), format_value(N.dist[i, j])))
    for name, table in N.predicates.items():
        for args in itertools.product(range(N.size), repeat=table.ndim):
            if k in args and table[args] != 0:
                where = (name,) + tuple(N.points[a] for a in args)
                report.add(Violation("vanish-at-infinity", where, format_value(table[args])))
    report.merge(check_comparison(M))
    order = sorted(range(M.size), key=lambda a: M.gauge[a])
    for a, b in zip(order, order[1:]):
        report.count("gauge-order")
        if M.gauge[a] < M.gauge[b] and not N.dist[a, k] > N.dist[b, k]:
            pair = (M.points[a], M.points[b])
            report.add(Violation("decreasing-to-infinity", pair, "d(a, oo) does not decrease in nu"))
    back = recover(E)
    if not back.tables_equal(M):
        report.add(Violation("round-trip", (), "recover(embound(M)) differs from M"))
    logger.debug("check-embound on %d points: %s", M.size, report)
    return report
