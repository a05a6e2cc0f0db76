"""
Conditions and approximate axiom schemes.

A :class:`Condition` is ``phi <= r`` or ``phi = r`` for a closed formula.
An :class:`ApproxScheme` is the notation ``forall^{<r} x exists^{<=s} y ... phi = 0``:
a list of quantifier windows over a matrix, expanded into restricted
quantifiers at a chosen window width. Radii may be the symbol ``n`` and are
then resolved per instance. :class:`GraphScheme` builds the four axiom
schemes attached to the graph predicate of a function symbol; two of them
have radii depending on the scheme parameter epsilon.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from gaugex.core.errors import TheoryError
from gaugex.core.extended import as_fraction, format_value
from gaugex.core.modulus import ContinuityModulus
from gaugex.syntax.formula import (
    ZERO,
    Add,
    Atomic,
    Formula,
    Sub,
    Var,
    const_formula,
    dist,
    dyadic_above,
    dyadic_below,
    formula_to_sexpr,
    max_of,
    min_of,
)

LE = "<="
EQ = "="

FORALL = "forall"
EXISTS = "exists"

N_RADIUS = "n"

Radius = Union[Fraction, str]


@dataclass(frozen=True)
class Condition:
    formula: Formula
    relation: str = LE
    threshold: Fraction = Fraction(0)
    label: str = ""
    group: str = ""

    def __post_init__(self):
        if self.relation not in (LE, EQ):
            raise TheoryError(f"condition relation must be '<=' or '=', got '{self.relation}'")
        object.__setattr__(self, "threshold", as_fraction(self.threshold))
        if self.threshold < 0:
            raise TheoryError("condition threshold must be nonnegative")

    def defect(self, value: Fraction) -> Fraction:
        """Amount by which ``value`` fails the condition."""
        if self.relation == EQ:
            return abs(value - self.threshold)
        return max(value - self.threshold, Fraction(0))

    def to_sexpr(self) -> str:
        return f"(cond {formula_to_sexpr(self.formula)} {self.relation} {format_value(self.threshold)})"


@dataclass(frozen=True)
class Window:
    """One quantifier block: ``forall^{<r}`` or ``exists^{<=r}`` over some variables."""

    kind: str
    variables: Tuple[str, ...]
    radius: Radius

    def __post_init__(self):
        if self.kind not in (FORALL, EXISTS):
            raise TheoryError(f"window kind must be 'forall' or 'exists', got '{self.kind}'")
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.radius != N_RADIUS:
            r = as_fraction(self.radius)
            if r <= 0:
                raise TheoryError(f"window radius must be positive, got {r}")
            object.__setattr__(self, "radius", r)

    @property
    def symbolic(self) -> bool:
        return self.radius == N_RADIUS

    def resolve(self, n) -> "Window":
        if not self.symbolic:
            return self
        if n is None:
            raise TheoryError("scheme radius 'n' needs a value")
        return Window(self.kind, self.variables, as_fraction(n))


@dataclass(frozen=True)
class ApproxScheme:
    matrix: Formula
    windows: Tuple[Window, ...] = ()
    label: str = ""
    group: str = ""

    def __post_init__(self):
        object.__setattr__(self, "windows", tuple(self.windows))

    @property
    def parametric(self) -> bool:
        return any(w.symbolic for w in self.windows)

    @property
    def universal_radii(self) -> List[Fraction]:
        return [w.radius for w in self.windows if w.kind == FORALL and not w.symbolic]

    def at(self, n=None) -> "ApproxScheme":
        """Resolve ``n`` radii."""
        if not self.parametric:
            return self
        return replace(self, windows=tuple(w.resolve(n) for w in self.windows))


GRAPH_KINDS = ("graph-left", "graph-right", "graph-exists", "graph-modulus")


@dataclass(frozen=True)
class GraphScheme:
    """One of the four axiom schemes of the graph ``G_f(x, y) = d(f(x), y)``.

    ``graph-left`` and ``graph-right`` are universal (radius ``n``);
    ``graph-exists`` and ``graph-modulus`` depend on epsilon through
    ``delta_f``. Non-dyadic constants are replaced by dyadic bounds on the
    weakening side, ``bits`` fixing the precision.
    """

    fn: str
    arity: int
    modulus: ContinuityModulus
    kind: str
    group: str = ""
    bits: int = 20

    def __post_init__(self):
        if self.kind not in GRAPH_KINDS:
            raise TheoryError(f"unknown graph scheme kind '{self.kind}'")

    @property
    def label(self) -> str:
        return f"{self.kind}[{self.fn}]"

    @property
    def parametric(self) -> bool:
        return self.kind in ("graph-left", "graph-right")

    def _names(self):
        xs = tuple(f"x{i + 1}" for i in range(self.arity))
        ys = tuple(f"y{i + 1}" for i in range(self.arity))
        return xs, ys

    def _g(self, args: Sequence[str], last: str) -> Atomic:
        from gaugex.syntax.signature import graph_name

        return Atomic(graph_name(self.fn), tuple(Var(a) for a in args) + (Var(last),))

    def at(self, eps=None) -> ApproxScheme:
        xs, ys = self._names()
        g = self._g
        if self.kind == "graph-left":
            matrix = Sub(g(xs, "y"), Add(g(xs, "z"), dist("y", "z")))
            return ApproxScheme(matrix, (Window(FORALL, xs + ("y", "z"), N_RADIUS),), self.label, self.group)
        if self.kind == "graph-right":
            matrix = Sub(dist("y", "z"), Add(g(xs, "y"), g(xs, "z")))
            return ApproxScheme(matrix, (Window(FORALL, xs + ("y", "z"), N_RADIUS),), self.label, self.group)
        if eps is None:
            raise TheoryError(f"{self.label} needs an epsilon")
        eps = as_fraction(eps)
        if eps <= 0:
            raise TheoryError("graph scheme epsilon must be positive")
        d_eps = self.modulus(eps)
        if self.kind == "graph-exists":
            windows = []
            if xs:
                windows.append(Window(FORALL, xs, 1 / eps))
            windows.append(Window(EXISTS, ("y",), 1 / d_eps))
            return ApproxScheme(g(xs, "y"), tuple(windows), self.label, self.group)
        # graph-modulus
        gap: Formula = ZERO
        for x, y in zip(xs, ys):
            gap = dist(x, y) if gap is ZERO else max_of(gap, dist(x, y))
        delta_c = const_formula(dyadic_below(d_eps, self.bits))
        eps_c = const_formula(dyadic_above(eps, self.bits))
        matrix = min_of(Sub(delta_c, gap), Sub(Sub(g(xs, "z"), g(ys, "z")), eps_c))
        windows = []
        if xs:
            windows.append(Window(FORALL, xs + ys, 1 / eps))
        windows.append(Window(FORALL, ("z",), 1 / d_eps + 1))
        return ApproxScheme(matrix, tuple(windows), self.label, self.group)


def graph_schemes(fn: str, arity: int, modulus: ContinuityModulus, group: str = "") -> List[GraphScheme]:
    group = group or f"graph[{fn}]"
    return [GraphScheme(fn, arity, modulus, kind, group) for kind in GRAPH_KINDS]
