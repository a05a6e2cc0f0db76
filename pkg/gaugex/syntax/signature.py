"""
Single-sorted unbounded signatures.

Every signature carries the distinguished binary predicate ``d`` and unary
predicate ``nu``; each symbol has a continuity modulus.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from gaugex.core.errors import SignatureError
from gaugex.core.extended import as_fraction, format_value
from gaugex.core.modulus import (
    IDENTITY,
    ContinuityModulus,
    Constant,
    Min,
    Scale,
    StandardArity,
    standard_modulus,
)
from gaugex.syntax.formula import DIST, GAUGE, RESERVED, App, Var, dist

logger = logging.getLogger(__name__)

PRED = "pred"
FUN = "fun"


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int
    modulus: ContinuityModulus
    kind: str = PRED

    def __post_init__(self):
        if self.arity < 0:
            raise SignatureError(f"symbol '{self.name}' has negative arity")
        if self.kind not in (PRED, FUN):
            raise SignatureError(f"symbol kind must be '{PRED}' or '{FUN}', got '{self.kind}'")

    def to_sexpr(self) -> str:
        return f"({self.kind} {self.name} {self.arity} {self.modulus.to_sexpr()})"


def default_distance_symbol() -> Symbol:
    return Symbol(DIST, 2, StandardArity(2), PRED)


def default_gauge_symbol() -> Symbol:
    return Symbol(GAUGE, 1, IDENTITY, PRED)


class Signature:
    """Predicate and function symbols with their moduli.

    Parameters
    ----------
    symbols : iterable of Symbol
        Declared symbols. ``d`` and ``nu`` are added with their default
        moduli (``std 2`` and ``id``) unless declared explicitly.
    """

    def __init__(self, symbols: Iterable[Symbol] = ()):
        preds: Dict[str, Symbol] = {}
        funs: Dict[str, Symbol] = {}
        for sym in symbols:
            if sym.name in preds or sym.name in funs:
                raise SignatureError(f"duplicate symbol name '{sym.name}'")
            if sym.name in (DIST, GAUGE):
                expected = 2 if sym.name == DIST else 1
                if sym.kind != PRED or sym.arity != expected:
                    raise SignatureError(
                        f"'{sym.name}' is the distinguished predicate of arity {expected}"
                    )
            elif sym.name in RESERVED:
                raise SignatureError(f"'{sym.name}' is a reserved word")
            (preds if sym.kind == PRED else funs)[sym.name] = sym
        preds.setdefault(DIST, default_distance_symbol())
        preds.setdefault(GAUGE, default_gauge_symbol())
        self._preds = preds
        self._funs = funs

    # -- access ------------------------------------------------------------

    @property
    def predicates(self) -> Mapping[str, Symbol]:
        return dict(self._preds)

    @property
    def functions(self) -> Mapping[str, Symbol]:
        return dict(self._funs)

    def predicate(self, name: str) -> Optional[Symbol]:
        return self._preds.get(name)

    def function(self, name: str) -> Optional[Symbol]:
        return self._funs.get(name)

    def symbols(self) -> List[Symbol]:
        return list(self._preds.values()) + list(self._funs.values())

    def user_predicates(self) -> List[Symbol]:
        return [s for n, s in self._preds.items() if n not in (DIST, GAUGE)]

    @property
    def is_relational(self) -> bool:
        return not self._funs

    def constants(self) -> List[Symbol]:
        return [s for s in self._funs.values() if s.arity == 0]

    def extend(self, symbols: Iterable[Symbol]) -> "Signature":
        return Signature(self.symbols() + list(symbols))

    def without(self, names: Iterable[str]) -> "Signature":
        drop = set(names)
        return Signature(s for s in self.symbols() if s.name not in drop)

    def shape(self) -> Tuple[Tuple[str, str, int], ...]:
        """Names, kinds and arities, ignoring moduli."""
        return tuple(sorted((s.kind, s.name, s.arity) for s in self.symbols()))

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return sorted(self.symbols(), key=_key) == sorted(other.symbols(), key=_key)

    def __hash__(self):
        return hash(self.shape())

    def __repr__(self):
        return f"Signature({', '.join(s.name for s in self.symbols())})"

    def to_sexpr(self) -> str:
        return "\n".join(s.to_sexpr() for s in self.symbols())


def _key(sym: Symbol):
    return (sym.kind, sym.name)


def constant_modulus(gauge) -> ContinuityModulus:
    """``id ^ 1/nu(a)``, or the identity when ``nu(a) = 0``."""
    gauge = as_fraction(gauge)
    if gauge < 0:
        raise SignatureError("gauge of a named constant must be nonnegative")
    if gauge == 0:
        return IDENTITY
    return Min.of(IDENTITY, Constant(1 / gauge))


def name_constants(sig: Signature, gauges: Mapping[str, object]) -> Signature:
    """Add a zero-ary function symbol for each named point."""
    new = []
    for name, g in gauges.items():
        if sig.predicate(name) or sig.function(name):
            raise SignatureError(f"constant name '{name}' collides with an existing symbol")
        new.append(Symbol(name, 0, constant_modulus(g), FUN))
    return sig.extend(new)


def graph_name(fn: str) -> str:
    return f"G_{fn}"


def graph_signature(sig: Signature):
    """Replace every function symbol by its graph predicate.

    Returns
    -------
    tuple
        ``(relational_signature, schemes)`` where ``schemes`` lists the four
        graph axiom schemes of each replaced symbol.
    """
    from gaugex.analysis.synthesis import synthesize_modulus
    from gaugex.syntax.conditions import graph_schemes

    if sig.is_relational:
        return sig, []
    preds = [s for s in sig.symbols() if s.kind == PRED]
    new_preds = []
    schemes = []
    for f in sig.functions.values():
        gname = graph_name(f.name)
        if sig.predicate(gname):
            raise SignatureError(f"graph predicate name '{gname}' already declared")
        xs = [f"x{i + 1}" for i in range(f.arity)]
        body = dist(App(f.name, tuple(Var(x) for x in xs)), Var("y"))
        delta = synthesize_modulus(body, sig)
        new_preds.append(Symbol(gname, f.arity + 1, delta, PRED))
        schemes.extend(graph_schemes(f.name, f.arity, f.modulus))
        logger.debug("graph predicate %s with modulus %s", gname, delta.to_sexpr())
    return Signature(preds + new_preds), schemes


def scalar_name(r) -> str:
    return f"scale_{format_value(as_fraction(r))}"


def banach_signature(scalars: Sequence = (Fraction(-1), Fraction(1, 2), Fraction(2))) -> Signature:
    """The signature ``{zero, plus, scale_r}`` of normed spaces.

    ``plus`` has the standard binary modulus; ``scale_r`` multiplies
    distances and gauges by ``|r|`` and gets ``eps / |r|``.
    """
    syms = [Symbol("zero", 0, IDENTITY, FUN), Symbol("plus", 2, StandardArity(2), FUN)]
    for r in scalars:
        r = as_fraction(r)
        if r == 0:
            delta: ContinuityModulus = IDENTITY
        elif abs(r) == 1:
            delta = IDENTITY
        else:
            delta = Scale(1 / abs(r), IDENTITY)
        syms.append(Symbol(scalar_name(r), 1, delta, FUN))
    return Signature(syms)


def standard_symbol(name: str, arity: int, kind: str = PRED) -> Symbol:
    return Symbol(name, arity, standard_modulus(arity), kind)

