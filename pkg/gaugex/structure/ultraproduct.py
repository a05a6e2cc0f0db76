"""
Ultraproducts over a principal ultrafilter.

For the ultrafilter concentrated at ``j`` every limit is the value at
coordinate ``j``: a sequence is bounded in gauge exactly when its
``j``-th entry is a real point, sequences agreeing at ``j`` are identified,
and the ultraproduct is a copy of ``M_j``. Łoś's theorem then says formula
values match those of ``M_j``; :func:`los_check` compares the two.
"""

import logging
from typing import Iterable, Mapping, Optional, Sequence

from gaugex.core.errors import StructureError
from gaugex.core.extended import format_value
from gaugex.core.report import CheckReport, Violation
from gaugex.structure.evaluate import Evaluator, eval_formula
from gaugex.structure.gauged import GaugedStructure
from gaugex.syntax.formula import Formula, formula_to_sexpr

logger = logging.getLogger(__name__)


def principal_ultraproduct(Ms: Sequence[GaugedStructure], j: int) -> GaugedStructure:
    """Ultraproduct of ``Ms`` over the principal ultrafilter at ``j``.

    Points are the classes of sequences through ``M_j``'s points, named
    ``[a]_j``; tables are those of ``M_j``.
    """
    if not Ms:
        raise StructureError("ultraproduct of an empty family")
    if not 0 <= j < len(Ms):
        raise StructureError(f"ultrafilter index {j} out of range for {len(Ms)} structures")
    shape = Ms[0].signature.shape()
    for i, M in enumerate(Ms):
        if M.signature.shape() != shape:
            raise StructureError(f"structure {i} has a different signature")
    M = Ms[j]
    points = [f"[{p}]_{j}" for p in M.points]
    logger.debug("principal ultraproduct at %d of %d structures: %d points", j, len(Ms), M.size)
    return GaugedStructure(M.signature, points, M.dist, M.gauge, M.predicates, M.functions)


def class_of(point: str, j: int) -> str:
    return f"[{point}]_{j}"


def los_check(
    Ms: Sequence[GaugedStructure],
    j: int,
    formulas: Iterable[Formula],
    assignments: Optional[Iterable[Mapping[str, str]]] = None,
) -> CheckReport:
    """Compare formula values in the principal ultraproduct with ``M_j``.

    ``assignments`` name points of ``M_j``; they are mapped to their classes
    in the ultraproduct. Without assignments only closed formulas make sense.
    """
    U = principal_ultraproduct(Ms, j)
    M = Ms[j]
    report = CheckReport(subject=f"los[{j}]")
    sigmas = list(assignments) if assignments is not None else [{}]
    ev_u, ev_m = Evaluator(U), Evaluator(M)
    for phi in formulas:
        for sigma in sigmas:
            report.count("values")
            lifted = {x: class_of(p, j) for x, p in sigma.items()}
            lhs = eval_formula(U, phi, lifted, ev_u)
            rhs = eval_formula(M, phi, sigma, ev_m)
            if lhs != rhs:
                report.add(
                    Violation(
                        "los",
                        tuple(f"{x}={p}" for x, p in sorted(sigma.items())),
                        f"{formula_to_sexpr(phi)}: {format_value(lhs)} != {format_value(rhs)}",
                    )
                )
    return report
