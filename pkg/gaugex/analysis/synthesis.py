"""
Continuity moduli for terms and formulas, built bottom-up.

Every modulus produced here lies below the identity:

* variables are projections (identity);
* ``f(t1, ..., tn)`` composes the pair of the argument moduli with the
  normalized symbol modulus, and the same for atomic formulas;
* connectives are symbols on the nonnegative reals with standard moduli
  (``1`` gets ``id ^ 1`` since its value is 1);
* ``sup_x phi`` combines the body's modulus with that of its limit in
  ``x`` through the quantifier rule, clamped at ``1 / C``.
"""

import logging
from typing import Dict, Optional, Tuple, Union

from gaugex.analysis.classify import Analyzer
from gaugex.core.errors import UnknownSymbolError
from gaugex.core.modulus import (
    IDENTITY,
    Constant,
    ContinuityModulus,
    compose_modulus,
    normalize,
    pair_modulus,
    quantifier_modulus,
    standard_modulus,
)
from gaugex.syntax.formula import (
    Add,
    App,
    Atomic,
    Formula,
    Half,
    One,
    Quantifier,
    Sub,
    Term,
    Var,
)

logger = logging.getLogger(__name__)

ONE_MODULUS = normalize(Constant(1))


class ModulusSynthesizer:
    def __init__(self, sig, analyzer: Optional[Analyzer] = None):
        self.sig = sig
        self.analyzer = analyzer or Analyzer()
        self._memo: Dict[int, Tuple[object, ContinuityModulus]] = {}

    def __call__(self, e: Union[Term, Formula]) -> ContinuityModulus:
        key = id(e)
        hit = self._memo.get(key)
        if hit is not None:
            return hit[1]
        out = self._compute(e)
        self._memo[key] = (e, out)
        return out

    def _apply(self, symbol_modulus: ContinuityModulus, args) -> ContinuityModulus:
        outer = normalize(symbol_modulus)
        if not args:
            return outer
        inner = pair_modulus([self(a) for a in args])
        return compose_modulus(inner, outer)

    def _compute(self, e) -> ContinuityModulus:
        if isinstance(e, Var):
            return IDENTITY
        if isinstance(e, App):
            sym = self.sig.function(e.fn)
            if sym is None:
                raise UnknownSymbolError(f"unknown function symbol '{e.fn}'")
            return self._apply(sym.modulus, e.args)
        if isinstance(e, Atomic):
            sym = self.sig.predicate(e.pred)
            if sym is None:
                raise UnknownSymbolError(f"unknown predicate symbol '{e.pred}'")
            return self._apply(sym.modulus, e.args)
        if isinstance(e, One):
            return ONE_MODULUS
        if isinstance(e, Half):
            return compose_modulus(self(e.body), standard_modulus(1))
        if isinstance(e, (Add, Sub)):
            inner = pair_modulus([self(e.left), self(e.right)])
            return compose_modulus(inner, standard_modulus(2))
        if isinstance(e, Quantifier):
            info = self.analyzer.info(e.body)
            C = info.threshold(e.var)
            limit = self.analyzer.limit(e.body, e.var)
            return quantifier_modulus(self(e.body), self(limit), C)
        raise TypeError(f"cannot synthesize a modulus for {e!r}")


def synthesize_modulus(e: Union[Term, Formula], sig, analyzer: Optional[Analyzer] = None) -> ContinuityModulus:
    """Modulus below the identity for a term or well-formed formula over ``sig``."""
    an = analyzer or Analyzer()
    if isinstance(e, Formula):
        an.info(e)
    return ModulusSynthesizer(sig, an)(e)
