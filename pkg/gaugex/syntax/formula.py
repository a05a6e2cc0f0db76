"""
Terms and formulas of unbounded continuous logic.

Connectives are the generating system ``{1, x - y (truncated), x + y, x/2}``
and the quantifiers ``sup``/``inf``. Nodes are frozen dataclasses; shared
subtrees are allowed (macro expansions double subformulas by reference),
so tree walkers in this package memoize on node identity.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

from gaugex.core.errors import GaugexError

DIST = "d"
GAUGE = "nu"

RESERVED = frozenset({"const", "half", "add", "sub", "sup", "inf", DIST, GAUGE})


# ======================================================================
# Terms
# ======================================================================


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App(Term):
    fn: str
    args: Tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        return term_to_sexpr(self)


# ======================================================================
# Formulas
# ======================================================================


class Formula:
    __slots__ = ()

    def __str__(self):
        return formula_to_sexpr(self)


@dataclass(frozen=True)
class Atomic(Formula):
    pred: str
    args: Tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class One(Formula):
    """The constant 1."""


@dataclass(frozen=True)
class Half(Formula):
    body: Formula


@dataclass(frozen=True)
class Add(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Sub(Formula):
    """Truncated subtraction ``left - right``, floored at 0."""

    left: Formula
    right: Formula


class Quantifier(Formula):
    __slots__ = ()
    keyword = ""


@dataclass(frozen=True)
class Sup(Quantifier):
    var: str
    body: Formula
    keyword = "sup"


@dataclass(frozen=True)
class Inf(Quantifier):
    var: str
    body: Formula
    keyword = "inf"


ONE = One()
ZERO = Sub(ONE, ONE)


def children(phi: Formula) -> Tuple[Formula, ...]:
    if isinstance(phi, (Atomic, One)):
        return ()
    if isinstance(phi, Half):
        return (phi.body,)
    if isinstance(phi, (Add, Sub)):
        return (phi.left, phi.right)
    if isinstance(phi, Quantifier):
        return (phi.body,)
    raise TypeError(f"not a formula node: {phi!r}")


def quantifier(keyword: str, var: str, body: Formula) -> Quantifier:
    if keyword == "sup":
        return Sup(var, body)
    if keyword == "inf":
        return Inf(var, body)
    raise ValueError(f"unknown quantifier '{keyword}'")


def dual(keyword: str) -> str:
    return "inf" if keyword == "sup" else "sup"


# ----------------------------------------------------------------------
# Convenience constructors
# ----------------------------------------------------------------------


def nu(t) -> Atomic:
    return Atomic(GAUGE, (_as_term(t),))


def dist(s, t) -> Atomic:
    return Atomic(DIST, (_as_term(s), _as_term(t)))


def atom(pred: str, *args) -> Atomic:
    return Atomic(pred, tuple(_as_term(a) for a in args))


def _as_term(t) -> Term:
    return Var(t) if isinstance(t, str) else t


def times(phi: Formula, k: int) -> Formula:
    """``k * phi`` by binary doubling; ``0 * phi`` is the zero formula.

    Doubled summands share the same node object.
    """
    if k < 0:
        raise ValueError("multiplier must be a natural number")
    if k == 0:
        return ZERO
    result: Optional[Formula] = None
    power = phi
    while k:
        if k & 1:
            result = power if result is None else Add(result, power)
        k >>= 1
        if k:
            power = Add(power, power)
    return result


def halve(phi: Formula, m: int) -> Formula:
    for _ in range(m):
        phi = Half(phi)
    return phi


def dyadic_const(k: int, m: int) -> Formula:
    """Closed formula with value ``k / 2**m`` built from 1, + and /2."""
    if k < 0 or m < 0:
        raise ValueError("dyadic_const needs natural k and m")
    if k == 0:
        return ZERO
    return halve(times(ONE, k), m)


def as_dyadic(r) -> Tuple[int, int]:
    """``(k, m)`` with ``r = k / 2**m`` and m minimal."""
    r = Fraction(r)
    if r < 0:
        raise ValueError(f"dyadic constant must be nonnegative, got {r}")
    m = 0
    while r.denominator != 1:
        if r.denominator % 2:
            raise ValueError(f"{r} is not a dyadic rational")
        r *= 2
        m += 1
    return int(r), m


def dyadic_below(q, bits: int = 20) -> Fraction:
    """Largest multiple of ``2**-bits`` that is ``<= q``."""
    q = Fraction(q)
    scale = 2 ** bits
    return Fraction((q.numerator * scale) // q.denominator, scale)


def dyadic_above(q, bits: int = 20) -> Fraction:
    """Smallest multiple of ``2**-bits`` that is ``>= q``."""
    q = Fraction(q)
    scale = 2 ** bits
    return Fraction(-((-q.numerator * scale) // q.denominator), scale)


def const_formula(r) -> Formula:
    return dyadic_const(*as_dyadic(r))


def truncate_at(phi: Formula, r) -> Formula:
    """``phi ^ r = r - (r - phi)``, bounded by r.

    ``r`` is a ``(k, m)`` pair or a dyadic rational.
    """
    k, m = r if isinstance(r, tuple) else as_dyadic(r)
    c = dyadic_const(k, m)
    return Sub(c, Sub(c, phi))


def max_of(phi: Formula, psi: Formula) -> Formula:
    """``max(phi, psi) = phi + (psi - phi)``."""
    return Add(phi, Sub(psi, phi))


def min_of(phi: Formula, psi: Formula) -> Formula:
    """``min(phi, psi) = phi - (phi - psi)``."""
    return Sub(phi, Sub(phi, psi))


def abs_diff(phi: Formula, psi: Formula) -> Formula:
    """``|phi - psi| = (phi - psi) + (psi - phi)``."""
    return Add(Sub(phi, psi), Sub(psi, phi))


def sum_of(items: Iterable[Formula]) -> Formula:
    """Balanced sum; the empty sum is the zero formula."""
    items = list(items)
    if not items:
        return ZERO
    while len(items) > 1:
        paired = [Add(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


# ======================================================================
# Variables
# ======================================================================


def term_vars(t: Term) -> FrozenSet[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    out: Set[str] = set()
    for a in t.args:
        out |= term_vars(a)
    return frozenset(out)


def free_vars(phi: Formula, _memo: Optional[Dict[int, FrozenSet[str]]] = None) -> FrozenSet[str]:
    """Free variables; quantifiers bind."""
    memo = {} if _memo is None else _memo
    key = id(phi)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(phi, Atomic):
        out: FrozenSet[str] = frozenset().union(*(term_vars(t) for t in phi.args))
    elif isinstance(phi, Quantifier):
        out = free_vars(phi.body, memo) - {phi.var}
    else:
        out = frozenset().union(*(free_vars(c, memo) for c in children(phi)))
    memo[key] = out
    return out


def bound_vars(phi: Formula) -> List[str]:
    """Binder names in preorder, with repetitions."""
    out: List[str] = []
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Quantifier):
            out.append(node.var)
        stack.extend(reversed(children(node)))
    return out


def rename_term(t: Term, env: Mapping[str, str]) -> Term:
    if isinstance(t, Var):
        return Var(env.get(t.name, t.name))
    return App(t.fn, tuple(rename_term(a, env) for a in t.args))


def substitute(phi: Formula, env: Mapping[str, str]) -> Formula:
    """Rename free variables by ``env``; binders shadow.

    Capture is not checked: call on formulas whose binders are apart from
    the target names (see :func:`rename_bound`).
    """
    if not env:
        return phi
    if isinstance(phi, Atomic):
        return Atomic(phi.pred, tuple(rename_term(t, env) for t in phi.args))
    if isinstance(phi, One):
        return phi
    if isinstance(phi, Half):
        return Half(substitute(phi.body, env))
    if isinstance(phi, Add):
        return Add(substitute(phi.left, env), substitute(phi.right, env))
    if isinstance(phi, Sub):
        return Sub(substitute(phi.left, env), substitute(phi.right, env))
    inner = {k: v for k, v in env.items() if k != phi.var}
    return quantifier(phi.keyword, phi.var, substitute(phi.body, inner))


def fresh_name(base: str, used: Set[str]) -> str:
    stem = base.rstrip("0123456789").rstrip("_") or "v"
    i = 1
    while f"{stem}_{i}" in used:
        i += 1
    return f"{stem}_{i}"


def rename_bound(phi: Formula) -> Formula:
    """Rename binders apart from each other and from the free variables.

    A formula whose binders are already distinct comes back unchanged.
    """
    used: Set[str] = set(free_vars(phi))
    return _rename(phi, {}, used, {})


def _rename(phi: Formula, env: Dict[str, str], used: Set[str], memo: Dict) -> Formula:
    # quantifier-free subtrees stay shared; quantified ones are copied so
    # every binder occurrence gets its own name
    if is_quantifier_free(phi):
        if not env:
            return phi
        key = (id(phi), tuple(sorted(env.items())))
        hit = memo.get(key)
        if hit is not None:
            return hit[1]
        out = substitute(phi, env)
        memo[key] = (phi, out)
        return out
    if isinstance(phi, Half):
        return Half(_rename(phi.body, env, used, memo))
    if isinstance(phi, (Add, Sub)):
        left = _rename(phi.left, env, used, memo)
        right = _rename(phi.right, env, used, memo)
        return type(phi)(left, right)
    new = fresh_name(phi.var, used) if phi.var in used else phi.var
    used.add(new)
    inner = dict(env)
    if new != phi.var:
        inner[phi.var] = new
    else:
        inner.pop(phi.var, None)
    return quantifier(phi.keyword, new, _rename(phi.body, inner, used, memo))


# ======================================================================
# Measures and printing
# ======================================================================


def complexity(phi: Formula) -> int:
    """Number of nodes of the formula read as a tree."""
    memo: Dict[int, int] = {}

    def walk(node: Formula) -> int:
        key = id(node)
        if key not in memo:
            memo[key] = 1 + sum(walk(c) for c in children(node))
        return memo[key]

    return walk(phi)


def is_quantifier_free(phi: Formula) -> bool:
    memo: Dict[int, bool] = {}

    def walk(node):
        key = id(node)
        if key not in memo:
            memo[key] = not isinstance(node, Quantifier) and all(walk(c) for c in children(node))
        return memo[key]

    return walk(phi)


def term_to_sexpr(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.fn
    return "(" + t.fn + " " + " ".join(term_to_sexpr(a) for a in t.args) + ")"


def formula_to_sexpr(phi: Formula) -> str:
    if isinstance(phi, Atomic):
        if not phi.args:
            return f"({phi.pred})"
        return "(" + phi.pred + " " + " ".join(term_to_sexpr(a) for a in phi.args) + ")"
    if isinstance(phi, One):
        return "(const 1)"
    if isinstance(phi, Half):
        return f"(half {formula_to_sexpr(phi.body)})"
    if isinstance(phi, Add):
        return f"(add {formula_to_sexpr(phi.left)} {formula_to_sexpr(phi.right)})"
    if isinstance(phi, Sub):
        return f"(sub {formula_to_sexpr(phi.left)} {formula_to_sexpr(phi.right)})"
    if isinstance(phi, Quantifier):
        return f"({phi.keyword} {phi.var} {formula_to_sexpr(phi.body)})"
    raise GaugexError(f"cannot print {phi!r}")
