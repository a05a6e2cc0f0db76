"""
Finite gauged metric structures.

A structure stores its tables as numpy arrays: ``dist`` (n x n) and
``gauge`` (n,) hold :class:`fractions.Fraction` objects, predicate tables
have shape ``(n,) * arity`` with Fraction entries and function tables the
same shape with integer point indices. Arrays are made read-only on
construction.
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from gaugex.core.errors import StructureError
from gaugex.core.extended import as_fraction, format_value
from gaugex.core.modulus import FiniteMap, respects_check
from gaugex.core.report import CheckReport, Violation
from gaugex.syntax.formula import DIST, GAUGE
from gaugex.syntax.signature import Signature

logger = logging.getLogger(__name__)

ValidationReport = CheckReport

# Type aliases
FractionTable = np.ndarray
IndexTable = np.ndarray


def fraction_array(values, shape: Tuple[int, ...]) -> FractionTable:
    """Object array of Fractions with the given shape."""
    arr = np.empty(shape, dtype=object)
    src = np.asarray(values, dtype=object)
    if src.shape != tuple(shape):
        raise StructureError(f"table has shape {src.shape}, expected {tuple(shape)}")
    for idx in np.ndindex(*shape) if shape else [()]:
        arr[idx] = as_fraction(src[idx])
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _shaped(values, shape: Tuple[int, ...]) -> np.ndarray:
    src = np.asarray(values, dtype=object)
    if src.size == int(np.prod(shape)) and src.shape != shape:
        return src.reshape(shape)
    return src


class GaugedStructure:
    """Finite structure for a signature.

    Parameters
    ----------
    signature : Signature
        Symbols interpreted by the structure.
    points : sequence of str
        Point identifiers (may be empty).
    dist : array-like
        Symmetric distance table.
    gauge : array-like
        Gauge of each point.
    predicates : dict, optional
        Table for every predicate other than ``d`` and ``nu``.
    functions : dict, optional
        Table of point indices for every function symbol.
    """

    def __init__(
        self,
        signature: Signature,
        points: Sequence[str],
        dist,
        gauge,
        predicates: Optional[Mapping[str, object]] = None,
        functions: Optional[Mapping[str, object]] = None,
    ):
        self.signature = signature
        self.points: Tuple[str, ...] = tuple(str(p) for p in points)
        if len(set(self.points)) != len(self.points):
            raise StructureError("point identifiers must be distinct")
        self._index = {p: i for i, p in enumerate(self.points)}
        n = len(self.points)
        self.dist = _freeze(fraction_array(_shaped(dist, (n, n)), (n, n)))
        self.gauge = _freeze(fraction_array(_shaped(gauge, (n,)), (n,)))
        predicates = dict(predicates or {})
        functions = dict(functions or {})

        self.predicates: Dict[str, FractionTable] = {}
        for sym in signature.user_predicates():
            if sym.name not in predicates:
                raise StructureError(f"missing table for predicate '{sym.name}'")
            shape = (n,) * sym.arity
            table = _shaped(predicates.pop(sym.name), shape)
            self.predicates[sym.name] = _freeze(fraction_array(table, shape))
        if predicates:
            raise StructureError(f"tables for undeclared predicates: {sorted(predicates)}")

        self.functions: Dict[str, IndexTable] = {}
        for sym in signature.functions.values():
            if sym.name not in functions:
                raise StructureError(f"missing table for function '{sym.name}'")
            shape = (n,) * sym.arity
            table = np.asarray(functions.pop(sym.name), dtype=np.int64)
            if table.shape != shape:
                raise StructureError(f"function '{sym.name}' table has shape {table.shape}, expected {shape}")
            if table.size and (table.min() < 0 or table.max() >= n):
                raise StructureError(f"function '{sym.name}' maps outside the point set")
            if sym.arity == 0 and n == 0:
                raise StructureError(f"constant '{sym.name}' cannot be interpreted in an empty structure")
            self.functions[sym.name] = _freeze(table.copy())
        if functions:
            raise StructureError(f"tables for undeclared functions: {sorted(functions)}")

    # -- access ------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def index(self, point: str) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise StructureError(f"unknown point '{point}'") from None

    def predicate_value(self, name: str, args: Tuple[int, ...]) -> Fraction:
        if name == DIST:
            return self.dist[args[0], args[1]]
        if name == GAUGE:
            return self.gauge[args[0]]
        return self.predicates[name][args]

    def apply(self, name: str, args: Tuple[int, ...]) -> int:
        return int(self.functions[name][args])

    def tables_equal(self, other: "GaugedStructure") -> bool:
        """Exact equality of points, signatures and tables."""
        if self.points != other.points or self.signature.shape() != other.signature.shape():
            return False
        if not (np.array_equal(self.dist, other.dist) and np.array_equal(self.gauge, other.gauge)):
            return False
        for name, table in self.predicates.items():
            if not np.array_equal(table, other.predicates.get(name)):
                return False
        for name, table in self.functions.items():
            if not np.array_equal(table, other.functions.get(name)):
                return False
        return True

    def relabel(self, points: Sequence[str]) -> "GaugedStructure":
        return GaugedStructure(self.signature, points, self.dist, self.gauge, self.predicates, self.functions)

    def finite_map(self, name: str) -> FiniteMap:
        """The table of a symbol as a :class:`FiniteMap` over the product space."""
        sym = self.signature.predicate(name) or self.signature.function(name)
        if sym is None:
            raise StructureError(f"unknown symbol '{name}'")
        if sym.kind == "fun":
            return FiniteMap.from_function(
                self.dist, self.gauge, sym.arity, lambda t: self.apply(name, t), self.points
            )
        return FiniteMap.from_values(
            self.dist, self.gauge, sym.arity, lambda t: self.predicate_value(name, t), self.points
        )

    def __repr__(self):
        return f"GaugedStructure({self.size} points, {self.signature!r})"


# ----------------------------------------------------------------------
# Validation
# ----------------------------------------------------------------------


def validate(M: GaugedStructure, check_moduli: bool = True, limit: int = 5) -> ValidationReport:
    """Check every structure axiom exhaustively.

    Metric axioms, the 1-Lipschitz gauge, nonnegative predicate values and,
    unless ``check_moduli`` is off, every symbol against its modulus.
    """
    report = CheckReport(subject="validate")
    n = M.size
    P = M.points
    d, g = M.dist, M.gauge
    for i in range(n):
        report.count("points")
        if d[i, i] != 0:
            report.add(Violation("zero-diagonal", (P[i],), f"d({P[i]},{P[i]}) = {format_value(d[i, i])}"))
        if g[i] < 0:
            report.add(Violation("gauge-nonnegative", (P[i],), f"nu = {format_value(g[i])}"))
        for j in range(n):
            if d[i, j] < 0:
                report.add(Violation("distance-nonnegative", (P[i], P[j]), format_value(d[i, j])))
            if d[i, j] != d[j, i]:
                report.add(Violation("symmetry", (P[i], P[j]), "d is not symmetric"))
            if i != j and d[i, j] == 0:
                report.add(Violation("separation", (P[i], P[j]), "distinct points at distance 0"))
            if abs(g[i] - g[j]) > d[i, j]:
                report.add(
                    Violation(
                        "gauge-lipschitz",
                        (P[i], P[j]),
                        f"|{format_value(g[i])} - {format_value(g[j])}| > {format_value(d[i, j])}",
                    )
                )
    for i, j, k in itertools.product(range(n), repeat=3):
        if d[i, k] > d[i, j] + d[j, k]:
            report.add(Violation("triangle", (P[i], P[j], P[k]), "d(a,c) > d(a,b) + d(b,c)"))
    report.count("triples", n ** 3)
    for name, table in M.predicates.items():
        if any(v < 0 for v in table.ravel()):
            report.add(Violation("predicate-nonnegative", (name,), "negative predicate value"))
    if check_moduli and report.passed:
        for sym in M.signature.symbols():
            sub = respects_check(M.finite_map(sym.name), sym.modulus, limit=limit)
            for v in sub.violations:
                report.add(Violation(f"modulus[{sym.name}]:{v.check}", v.witness, v.detail, v.epsilon))
            report.count("symbols")
    logger.debug("validated %d points: %s", n, report)
    return report
