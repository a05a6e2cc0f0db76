"""
Syntactic boundedness and eventual constancy.

Rules (by node):

* atomic formulas are unbounded and eventually constant exactly in the
  variables they do not mention;
* ``1`` is bounded with bound 1;
* connectives propagate both properties conjunctively, bounds are read at
  the corner of the box (``B(phi + psi) = B(phi) + B(psi)``,
  ``B(phi - psi) = B(phi)``, ``B(phi / 2) = B(phi) / 2``);
* ``phi - psi`` is bounded whenever ``phi`` is, and ``phi - nu(x)`` is
  eventually constant in ``x`` (threshold ``B(phi)``, limit 0) whenever
  ``phi`` is bounded;
* ``sup_x phi`` and ``inf_x phi`` are formulas only when ``phi`` is
  eventually constant in ``x``.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from gaugex.core.errors import (
    IllFormedFormulaError,
    NotEventuallyConstantError,
    UnboundedFormulaError,
)
from gaugex.core.modulus import ContinuityModulus
from gaugex.syntax.formula import (
    GAUGE,
    ZERO,
    Add,
    Atomic,
    Formula,
    Half,
    One,
    Quantifier,
    Sub,
    Var,
    formula_to_sexpr,
    quantifier,
    term_vars,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NodeInfo:
    bounded: bool
    bound: Optional[Fraction]
    free: FrozenSet[str]
    ec: FrozenSet[str]
    thresholds: Dict[str, Fraction] = field(default_factory=dict, compare=False)
    gauge_rule: Optional[str] = None

    def is_ec(self, x: str) -> bool:
        return x not in self.free or x in self.ec

    def threshold(self, x: str) -> Fraction:
        if x not in self.free:
            return Fraction(0)
        return self.thresholds[x]


@dataclass
class AnalysisResult:
    """Report of :func:`classify`.

    ``bound`` is present iff ``bounded``; ``thresholds`` has an entry for
    each free variable in which the formula is eventually constant (other
    variables are trivially eventually constant with threshold 0).
    """

    bounded: bool
    bound: Optional[Fraction]
    free_vars: FrozenSet[str]
    eventually_constant: FrozenSet[str]
    thresholds: Dict[str, Fraction]
    modulus: Optional[ContinuityModulus] = None

    def is_ec(self, x: str) -> bool:
        return x not in self.free_vars or x in self.eventually_constant

    def threshold(self, x: str) -> Fraction:
        if x not in self.free_vars:
            return Fraction(0)
        if x not in self.thresholds:
            raise NotEventuallyConstantError(f"not eventually constant in '{x}'")
        return self.thresholds[x]


def _gauge_var(phi: Formula) -> Optional[str]:
    """``x`` when ``phi`` is literally ``nu(x)`` for a variable ``x``."""
    if isinstance(phi, Atomic) and phi.pred == GAUGE and len(phi.args) == 1:
        arg = phi.args[0]
        if isinstance(arg, Var):
            return arg.name
    return None


class Analyzer:
    """Memoizing walker computing :class:`NodeInfo` and limit formulas.

    Memo tables are keyed by node identity and keep a reference to the
    node, so one analyzer can be reused for many queries on shared trees.
    """

    def __init__(self):
        self._info: Dict[int, Tuple[Formula, NodeInfo]] = {}
        self._limits: Dict[Tuple[int, str], Tuple[Formula, Formula]] = {}
        self.diagnostics: List[str] = []
        self.strict = True

    # -- node info ---------------------------------------------------------

    def info(self, phi: Formula) -> NodeInfo:
        key = id(phi)
        hit = self._info.get(key)
        if hit is not None:
            return hit[1]
        out = self._compute(phi)
        self._info[key] = (phi, out)
        return out

    def _connective(self, phi, parts: List[NodeInfo], bounded: bool, bound) -> NodeInfo:
        free = frozenset().union(*(p.free for p in parts))
        ec = frozenset(x for x in free if all(p.is_ec(x) for p in parts))
        thresholds = {x: max(p.threshold(x) for p in parts) for x in ec}
        return NodeInfo(bounded, bound if bounded else None, free, ec, thresholds)

    def _compute(self, phi: Formula) -> NodeInfo:
        if isinstance(phi, Atomic):
            free = frozenset().union(*(term_vars(t) for t in phi.args))
            return NodeInfo(False, None, free, frozenset(), {})
        if isinstance(phi, One):
            return NodeInfo(True, Fraction(1), frozenset(), frozenset(), {})
        if isinstance(phi, Half):
            b = self.info(phi.body)
            return self._connective(phi, [b], b.bounded, b.bound / 2 if b.bounded else None)
        if isinstance(phi, Add):
            l, r = self.info(phi.left), self.info(phi.right)
            bounded = l.bounded and r.bounded
            return self._connective(phi, [l, r], bounded, l.bound + r.bound if bounded else None)
        if isinstance(phi, Sub):
            l, r = self.info(phi.left), self.info(phi.right)
            out = self._connective(phi, [l, r], l.bounded, l.bound)
            x = _gauge_var(phi.right)
            if l.bounded and x is not None:
                # dedicated rule: the connective rule never applies here since
                # nu(x) is not eventually constant in x
                assert not r.is_ec(x)
                thresholds = dict(out.thresholds)
                thresholds[x] = l.bound
                return NodeInfo(out.bounded, out.bound, out.free, out.ec | {x}, thresholds, gauge_rule=x)
            return out
        if isinstance(phi, Quantifier):
            b = self.info(phi.body)
            if not b.is_ec(phi.var):
                msg = (
                    f"body of '{phi.keyword} {phi.var}' is not eventually constant in "
                    f"'{phi.var}': {_short(phi.body)}"
                )
                if self.strict:
                    raise IllFormedFormulaError("ill-formed formula", [msg])
                self.diagnostics.append(msg)
            free = b.free - {phi.var}
            ec = b.ec - {phi.var}
            thresholds = {x: c for x, c in b.thresholds.items() if x in ec}
            return NodeInfo(b.bounded, b.bound, free, ec, thresholds)
        raise TypeError(f"not a formula node: {phi!r}")

    # -- limits ------------------------------------------------------------

    def limit(self, phi: Formula, x: str) -> Formula:
        """The formula ``phi(inf, y)`` obtained by sending ``x`` to infinity."""
        info = self.info(phi)
        if x not in info.free:
            return phi
        if x not in info.ec:
            raise NotEventuallyConstantError(f"'{_short(phi)}' is not eventually constant in '{x}'")
        key = (id(phi), x)
        hit = self._limits.get(key)
        if hit is not None:
            return hit[1]
        if isinstance(phi, Half):
            out: Formula = Half(self.limit(phi.body, x))
        elif isinstance(phi, Add):
            out = Add(self.limit(phi.left, x), self.limit(phi.right, x))
        elif isinstance(phi, Sub):
            if info.gauge_rule == x:
                out = ZERO
            else:
                out = Sub(self.limit(phi.left, x), self.limit(phi.right, x))
        elif isinstance(phi, Quantifier):
            out = quantifier(phi.keyword, phi.var, self.limit(phi.body, x))
        else:  # pragma: no cover - atomic formulas are never eventually constant in free x
            raise NotEventuallyConstantError(f"'{_short(phi)}' is not eventually constant in '{x}'")
        self._limits[key] = (phi, out)
        return out


def _short(phi: Formula, width: int = 80) -> str:
    text = formula_to_sexpr(phi)
    return text if len(text) <= width else text[: width - 3] + "..."


# ----------------------------------------------------------------------
# Public operations
# ----------------------------------------------------------------------


def classify(phi: Formula, sig=None, analyzer: Optional[Analyzer] = None) -> AnalysisResult:
    """Classify ``phi``; with a signature the synthesized modulus is attached.

    Raises
    ------
    IllFormedFormulaError
        If a quantifier body is not eventually constant in its variable.
    """
    an = analyzer or Analyzer()
    info = an.info(phi)
    modulus = None
    if sig is not None:
        from gaugex.analysis.synthesis import synthesize_modulus

        modulus = synthesize_modulus(phi, sig, analyzer=an)
    return AnalysisResult(
        bounded=info.bounded,
        bound=info.bound,
        free_vars=info.free,
        eventually_constant=info.ec,
        thresholds=dict(info.thresholds),
        modulus=modulus,
    )


def bound(phi: Formula) -> Fraction:
    info = Analyzer().info(phi)
    if not info.bounded:
        raise UnboundedFormulaError(f"formula is not syntactically bounded: {_short(phi)}")
    return info.bound


def is_bounded(phi: Formula) -> bool:
    return Analyzer().info(phi).bounded


def threshold(phi: Formula, x: str) -> Fraction:
    info = Analyzer().info(phi)
    if not info.is_ec(x):
        raise NotEventuallyConstantError(f"'{_short(phi)}' is not eventually constant in '{x}'")
    return info.threshold(x)


def limit_formula(phi: Formula, x: str) -> Formula:
    return Analyzer().limit(phi, x)


def well_formed(phi: Formula) -> Tuple[bool, List[str]]:
    """Check every quantifier; returns ``(ok, diagnostics)`` without raising."""
    an = Analyzer()
    an.strict = False
    an.info(phi)
    return (not an.diagnostics, list(an.diagnostics))


def require_well_formed(phi: Formula) -> None:
    ok, diagnostics = well_formed(phi)
    if not ok:
        raise IllFormedFormulaError("ill-formed formula", diagnostics)
