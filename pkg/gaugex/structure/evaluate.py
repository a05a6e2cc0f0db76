"""
Exact evaluation of terms and formulas in finite structures.

Quantifiers range over the points of the structure together with the ideal
point at infinity, whose contribution is the value of the limit formula.
An empty structure therefore still gives every quantifier a value.
"""

import logging
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from gaugex.analysis.classify import Analyzer
from gaugex.core.errors import StructureError, UnassignedVariableError
from gaugex.core.modulus import FiniteMap
from gaugex.structure.gauged import GaugedStructure
from gaugex.syntax.formula import (
    Add,
    Atomic,
    Formula,
    Half,
    One,
    Quantifier,
    Sub,
    Sup,
    Term,
    Var,
)

logger = logging.getLogger(__name__)

Assignment = Mapping[str, str]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Evaluator:
    """Memoizing evaluator bound to one structure.

    Assignments are passed internally as dicts from variable names to point
    indices. The memo key is the node identity plus the assignment restricted
    to the node's free variables, so shared subtrees are evaluated once per
    relevant assignment.
    """

    def __init__(self, M: GaugedStructure, analyzer: Optional[Analyzer] = None):
        self.M = M
        self.analyzer = analyzer or Analyzer()
        self._memo: Dict[Tuple, Tuple[Formula, Fraction]] = {}
        self._free: Dict[int, Tuple[str, ...]] = {}

    # -- terms -------------------------------------------------------------

    def term(self, t: Term, env: Mapping[str, int]) -> int:
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise UnassignedVariableError(f"variable '{t.name}' is not assigned") from None
        args = tuple(self.term(a, env) for a in t.args)
        return self.M.apply(t.fn, args)

    # -- formulas ----------------------------------------------------------

    def _free_of(self, phi: Formula) -> Tuple[str, ...]:
        key = id(phi)
        hit = self._free.get(key)
        if hit is None:
            hit = tuple(sorted(self.analyzer.info(phi).free))
            self._free[key] = hit
        return hit

    def formula(self, phi: Formula, env: Mapping[str, int]) -> Fraction:
        free = self._free_of(phi)
        try:
            key = (id(phi),) + tuple(env[x] for x in free)
        except KeyError as exc:
            raise UnassignedVariableError(f"variable '{exc.args[0]}' is not assigned") from None
        hit = self._memo.get(key)
        if hit is not None:
            return hit[1]
        out = self._compute(phi, env)
        self._memo[key] = (phi, out)
        return out

    def _compute(self, phi: Formula, env: Mapping[str, int]) -> Fraction:
        if isinstance(phi, Atomic):
            args = tuple(self.term(t, env) for t in phi.args)
            return self.M.predicate_value(phi.pred, args)
        if isinstance(phi, One):
            return _ONE
        if isinstance(phi, Half):
            return self.formula(phi.body, env) / 2
        if isinstance(phi, Add):
            return self.formula(phi.left, env) + self.formula(phi.right, env)
        if isinstance(phi, Sub):
            return max(self.formula(phi.left, env) - self.formula(phi.right, env), _ZERO)
        if isinstance(phi, Quantifier):
            pick = max if isinstance(phi, Sup) else min
            at_infinity = self.formula(self.analyzer.limit(phi.body, phi.var), env)
            if phi.var not in self.analyzer.info(phi.body).free:
                return at_infinity
            inner = dict(env)
            values = [at_infinity]
            for b in range(self.M.size):
                inner[phi.var] = b
                values.append(self.formula(phi.body, inner))
            return pick(values)
        raise TypeError(f"not a formula node: {phi!r}")


def _indices(M: GaugedStructure, sigma: Optional[Assignment]) -> Dict[str, int]:
    return {x: M.index(p) for x, p in (sigma or {}).items()}


def eval_term(M: GaugedStructure, t: Term, sigma: Optional[Assignment] = None) -> str:
    """Point identifier denoted by ``t`` under ``sigma``."""
    return M.points[Evaluator(M).term(t, _indices(M, sigma))]


def eval_formula(
    M: GaugedStructure,
    phi: Formula,
    sigma: Optional[Assignment] = None,
    evaluator: Optional[Evaluator] = None,
) -> Fraction:
    """Exact value of a well-formed formula.

    Args:
        M: The structure.
        phi: Formula; ill-formed input raises ``IllFormedFormulaError``.
        sigma: Variable name to point identifier.
        evaluator: Reused across calls to share the memo.

    Returns:
        A nonnegative Fraction.
    """
    ev = evaluator or Evaluator(M)
    if ev.M is not M:
        raise StructureError("evaluator is bound to a different structure")
    return ev.formula(phi, _indices(M, sigma))


def evaluation_table(
    M: GaugedStructure,
    phi: Formula,
    variables: Optional[Sequence[str]] = None,
) -> FiniteMap:
    """Values of ``phi`` over ``M^n`` for its free variables in order.

    The result carries the product metric and gauge, ready for
    :func:`gaugex.core.modulus.respects_check` against a synthesized modulus.
    """
    ev = Evaluator(M)
    if variables is None:
        variables = sorted(ev.analyzer.info(phi).free)
    variables = list(variables)
    n = len(variables)

    def value(t: Tuple[int, ...]) -> Fraction:
        return ev.formula(phi, dict(zip(variables, t)))

    table = FiniteMap.from_values(M.dist, M.gauge, n, value, M.points)
    logger.debug("evaluation table over %d^%d tuples", M.size, n)
    return table
