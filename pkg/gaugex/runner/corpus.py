"""
Random structures, formulas and tables for the property suites.

Structures are small point clouds in ``(Q^2, linf)`` closed under negation
and containing the origin, with ``nu(x) = |x|``, the predicates
``P(x) = |x_1|`` and ``Q(x, y) = |x_1 - y_2|``, the function ``neg`` and the
constant ``o`` (the origin). Formulas are generated well-formed: every
quantifier body is cut off by the gauge of its variable.

All generators take a ``numpy.random.Generator`` so runs are reproducible
from a seed.
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from gaugex.analysis.classify import is_bounded, well_formed
from gaugex.core.errors import DependentVectorsError
from gaugex.core.modulus import (
    IDENTITY,
    ClampTo,
    Constant,
    ContinuityModulus,
    FiniteMap,
    Min,
    Scale,
    StandardArity,
)
from gaugex.structure.gauged import GaugedStructure
from gaugex.syntax.formula import (
    ONE,
    ZERO,
    Add,
    App,
    Atomic,
    Formula,
    Half,
    Inf,
    Sub,
    Sup,
    Term,
    Var,
    dist,
    nu,
)
from gaugex.syntax.signature import FUN, PRED, Signature, Symbol

logger = logging.getLogger(__name__)

VARIABLES = ("x", "y", "z")


# ----------------------------------------------------------------------
# Structures
# ----------------------------------------------------------------------


def corpus_signature() -> Signature:
    return Signature(
        [
            Symbol("P", 1, IDENTITY, PRED),
            Symbol("Q", 2, StandardArity(2), PRED),
            Symbol("neg", 1, IDENTITY, FUN),
            Symbol("o", 0, IDENTITY, FUN),
        ]
    )


def _linf(v: Sequence[Fraction]) -> Fraction:
    return max((abs(c) for c in v), default=Fraction(0))


def structure_from_vectors(vectors: Sequence[Tuple[Fraction, Fraction]]) -> GaugedStructure:
    """Corpus structure on the origin plus ``±v`` for each ``v`` in ``vectors``."""
    pts: List[Tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(0))]
    names = ["z"]
    for i, v in enumerate(vectors, start=1):
        v = (Fraction(v[0]), Fraction(v[1]))
        w = (-v[0], -v[1])
        pts += [v, w]
        names += [f"a{i}", f"b{i}"]
    n = len(pts)
    index = {p: i for i, p in enumerate(pts)}
    dist_table = np.empty((n, n), dtype=object)
    Q = np.empty((n, n), dtype=object)
    for i, j in itertools.product(range(n), repeat=2):
        dist_table[i, j] = _linf((pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]))
        Q[i, j] = abs(pts[i][0] - pts[j][1])
    gauge = [_linf(p) for p in pts]
    P = np.array([abs(p[0]) for p in pts], dtype=object)
    neg = np.array([index[(-p[0], -p[1])] for p in pts], dtype=np.int64)
    return GaugedStructure(
        corpus_signature(),
        names,
        dist_table,
        gauge,
        {"P": P, "Q": Q},
        {"neg": neg, "o": np.array(0, dtype=np.int64)},
    )


def random_structure(rng: np.random.Generator, max_points: int = 6, radius: int = 3, grid: int = 2) -> GaugedStructure:
    """Origin plus up to ``(max_points - 1) // 2`` random antipodal pairs.

    Coordinates are ``k / grid`` with ``|k| <= radius * grid``.
    """
    pairs = int(rng.integers(0, (max_points - 1) // 2 + 1))
    side = radius * grid
    chosen: List[Tuple[Fraction, Fraction]] = []
    taken = {(0, 0)}
    while len(chosen) < pairs:
        k = tuple(int(c) for c in rng.integers(-side, side + 1, size=2))
        if k in taken:
            continue
        taken.add(k)
        taken.add((-k[0], -k[1]))
        chosen.append((Fraction(k[0], grid), Fraction(k[1], grid)))
    return structure_from_vectors(chosen)


def random_structures(rng: np.random.Generator, count: int, max_points: int = 6) -> List[GaugedStructure]:
    return [random_structure(rng, max_points) for _ in range(count)]


# ----------------------------------------------------------------------
# Formulas
# ----------------------------------------------------------------------


class FormulaGenerator:
    """Random well-formed formulas over :func:`corpus_signature`.

    Args:
        rng: Source of randomness.
        depth: Maximum connective depth.
        quantifier_rate: Relative weight of quantifier nodes.
    """

    def __init__(self, rng: np.random.Generator, depth: int = 4, quantifier_rate: float = 0.25):
        self.rng = rng
        self.depth = depth
        self.quantifier_rate = quantifier_rate
        self._fresh = 0

    def _pick(self, items):
        return items[int(self.rng.integers(len(items)))]

    def term(self, scope: Sequence[str]) -> Term:
        roll = self.rng.random()
        if not scope or roll < 0.1:
            return App("o", ())
        base = Var(self._pick(list(scope)))
        if roll < 0.3:
            return App("neg", (base,))
        return base

    def atom(self, scope: Sequence[str]) -> Formula:
        kind = self._pick(["P", "Q", "d", "nu"])
        if kind == "P":
            return Atomic("P", (self.term(scope),))
        if kind == "Q":
            return Atomic("Q", (self.term(scope), self.term(scope)))
        if kind == "d":
            return dist(self.term(scope), self.term(scope))
        return nu(self.term(scope))

    def leaf(self, scope: Sequence[str], bounded: bool) -> Formula:
        roll = self.rng.random()
        if bounded:
            if roll < 0.3:
                return ONE
            if roll < 0.4:
                return Half(ONE)
            if roll < 0.45:
                return ZERO
            return Sub(ONE, self.atom(scope))
        if roll < 0.15:
            return ONE
        return self.atom(scope)

    def formula(
        self, scope: Sequence[str] = VARIABLES[:2], bounded: bool = False, depth: Optional[int] = None
    ) -> Formula:
        depth = self.depth if depth is None else depth
        if depth <= 0 or self.rng.random() < 0.2:
            return self.leaf(scope, bounded)
        weights = np.array([1.0, 1.0, 1.5, self.quantifier_rate * 4])
        op = self.rng.choice(["half", "add", "sub", "quant"], p=weights / weights.sum())
        if op == "half":
            return Half(self.formula(scope, bounded, depth - 1))
        if op == "add":
            return Add(self.formula(scope, bounded, depth - 1), self.formula(scope, bounded, depth - 1))
        if op == "sub":
            return Sub(self.formula(scope, bounded, depth - 1), self.formula(scope, False, depth - 1))
        return self.quantified(scope, bounded, depth - 1)

    def quantified(self, scope: Sequence[str], bounded: bool, depth: int) -> Formula:
        # reuse a scope name now and then to exercise shadowing
        if scope and self.rng.random() < 0.15:
            x = self._pick(list(scope))
        else:
            self._fresh += 1
            x = f"q{self._fresh}"
        inner = list(scope) + ([x] if x not in scope else [])
        body: Formula = Sub(self.formula(inner, True, depth), nu(x))
        roll = self.rng.random()
        outer = [v for v in inner if v != x]
        if roll < 0.2:
            body = Add(body, self.formula(outer, bounded, max(depth - 1, 0)))
        elif roll < 0.3:
            body = Half(body)
        return Sup(x, body) if self.rng.random() < 0.5 else Inf(x, body)


def random_formula(
    rng: np.random.Generator,
    scope: Sequence[str] = VARIABLES[:2],
    depth: int = 4,
    bounded: bool = False,
) -> Formula:
    return FormulaGenerator(rng, depth).formula(scope, bounded)


def random_formulas(
    rng: np.random.Generator,
    count: int,
    scope: Sequence[str] = VARIABLES[:2],
    depth: int = 4,
    bounded: bool = False,
    tries: int = 20,
) -> List[Formula]:
    """``count`` well-formed formulas; with ``bounded`` only syntactically bounded ones."""
    gen = FormulaGenerator(rng, depth)
    out: List[Formula] = []
    budget = count * tries
    while len(out) < count and budget > 0:
        budget -= 1
        phi = gen.formula(scope, bounded)
        if not well_formed(phi)[0]:
            continue
        if bounded and not is_bounded(phi):
            continue
        out.append(phi)
    if len(out) < count:
        logger.warning("generated only %d of %d formulas", len(out), count)
    return out


def random_assignment(rng: np.random.Generator, M: GaugedStructure, variables: Sequence[str]) -> Dict[str, str]:
    return {v: M.points[int(rng.integers(M.size))] for v in variables}


# ----------------------------------------------------------------------
# Moduli, measure weights and bases
# ----------------------------------------------------------------------


def _rational(rng: np.random.Generator, top: int = 8, denominator: int = 4) -> Fraction:
    return Fraction(int(rng.integers(1, top + 1)), int(rng.integers(1, denominator + 1)))


def random_modulus(rng: np.random.Generator, depth: int = 2) -> ContinuityModulus:
    roll = rng.random()
    if depth <= 0 or roll < 0.3:
        leaf = int(rng.integers(3))
        if leaf == 0:
            return IDENTITY
        if leaf == 1:
            return StandardArity(int(rng.integers(1, 4)))
        return Constant(_rational(rng))
    if roll < 0.55:
        return Scale(_rational(rng), random_modulus(rng, depth - 1))
    if roll < 0.8:
        return ClampTo(_rational(rng), random_modulus(rng, depth - 1))
    return Min.of(random_modulus(rng, depth - 1), random_modulus(rng, depth - 1))


def random_finite_map(rng: np.random.Generator, size: int = 4, denominator: int = 4) -> FiniteMap:
    """Real-valued map on random rationals of the line, metric ``|a - b|``, gauge ``|a|``."""
    coords: List[Fraction] = []
    while len(coords) < size:
        c = Fraction(int(rng.integers(-4 * denominator, 4 * denominator + 1)), denominator)
        if c not in coords:
            coords.append(c)
    values = [Fraction(int(rng.integers(0, 4 * denominator + 1)), denominator) for _ in coords]
    dist_table = np.empty((size, size), dtype=object)
    for i, j in itertools.product(range(size), repeat=2):
        dist_table[i, j] = abs(coords[i] - coords[j])
    gauge = np.array([abs(c) for c in coords], dtype=object)
    return FiniteMap.from_values(dist_table, gauge, 1, lambda t: values[t[0]])


def measure_weights(atoms: int, denominator: int) -> List[Tuple[Fraction, ...]]:
    """Every weight vector of length ``1..atoms`` with entries ``k / q``, ``q <= denominator``, ``k <= q``."""
    values = sorted({Fraction(k, q) for q in range(1, denominator + 1) for k in range(1, q + 1)})
    out: List[Tuple[Fraction, ...]] = []
    for length in range(1, atoms + 1):
        out.extend(itertools.combinations_with_replacement(values, length))
    return out


def random_weights(rng: np.random.Generator, atoms: int = 3, denominator: int = 8) -> List[Fraction]:
    k = int(rng.integers(1, atoms + 1))
    return [Fraction(int(rng.integers(1, denominator + 1)), denominator) for _ in range(k)]


def random_basis(rng: np.random.Generator, k: int, dim: int, tol: float = 1e-6) -> np.ndarray:
    """``k`` independent vectors of ``R^dim`` with integer entries in ``[-3, 3]``."""
    for _ in range(1000):
        B = rng.integers(-3, 4, size=(k, dim)).astype(float)
        if np.linalg.matrix_rank(B, tol=tol) == k:
            return B
    raise DependentVectorsError(f"no independent {k}-tuple found in dimension {dim}")
