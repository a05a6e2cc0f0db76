"""
Exact calculus of uniform continuity moduli under a gauge.

A modulus is an expression tree over a small set of generators, each
denoting a continuous increasing function (0, inf) -> (0, inf). Trees are
immutable and evaluate exactly at rationals.

The module also implements the check that a finite map "respects delta
under nu": for all x, y with nu(x), nu(y) < 1/eps and d(x, y) < delta(eps)
we need d(f x, f y) <= eps and nu(f x) <= 1/delta(eps).
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from gaugex.core.errors import ModulusError, ParseError
from gaugex.core.extended import INF, ExtendedValue, as_fraction, format_value, reciprocal
from gaugex.core.report import CheckReport, Violation
from gaugex.core.sexpr import (
    head_of,
    is_atom,
    natural_atom,
    position_of,
    rational_atom,
    read_one,
)

logger = logging.getLogger(__name__)


# ======================================================================
# Modulus trees
# ======================================================================


class ContinuityModulus:
    """Base class of modulus nodes.

    Subclasses implement ``_eval``, ``sup`` and ``to_sexpr``. Calling a
    modulus evaluates it at a positive rational.
    """

    def __call__(self, eps) -> Fraction:
        eps = as_fraction(eps)
        if eps <= 0:
            raise ModulusError(f"modulus evaluated at nonpositive epsilon {eps}")
        return self._eval(eps)

    def _eval(self, eps: Fraction) -> Fraction:  # pragma: no cover - abstract
        raise NotImplementedError

    def sup(self) -> ExtendedValue:  # pragma: no cover - abstract
        raise NotImplementedError

    def to_sexpr(self) -> str:  # pragma: no cover - abstract
        raise NotImplementedError

    @cached_property
    def below_identity(self) -> bool:
        return self._below_identity()

    def _below_identity(self) -> bool:
        return False

    def __str__(self) -> str:
        return self.to_sexpr()


def _positive(c, what: str) -> Fraction:
    c = as_fraction(c)
    if c <= 0:
        raise ModulusError(f"{what} must be a positive rational, got {c}")
    return c


@dataclass(frozen=True, eq=True)
class Identity(ContinuityModulus):
    def _eval(self, eps):
        return eps

    def sup(self):
        return INF

    def to_sexpr(self):
        return "id"

    def _below_identity(self):
        return True


@dataclass(frozen=True, eq=True)
class Constant(ContinuityModulus):
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", _positive(self.c, "constant"))

    def _eval(self, eps):
        return self.c

    def sup(self):
        return self.c

    def to_sexpr(self):
        return f"(const {format_value(self.c)})"


@dataclass(frozen=True, eq=True)
class Scale(ContinuityModulus):
    c: Fraction
    child: ContinuityModulus = field(default_factory=Identity)

    def __post_init__(self):
        object.__setattr__(self, "c", _positive(self.c, "scale factor"))

    def _eval(self, eps):
        return self.c * self.child._eval(eps)

    def sup(self):
        s = self.child.sup()
        return INF if s is INF else self.c * s

    def to_sexpr(self):
        return f"(scale {format_value(self.c)} {self.child.to_sexpr()})"

    def _below_identity(self):
        return self.c <= 1 and self.child.below_identity


@dataclass(frozen=True, eq=True)
class Min(ContinuityModulus):
    children: Tuple[ContinuityModulus, ...]

    def __post_init__(self):
        if not self.children:
            raise ModulusError("Min needs at least one child")
        object.__setattr__(self, "children", tuple(self.children))

    @classmethod
    def of(cls, *children: ContinuityModulus) -> ContinuityModulus:
        """Min with nested Min nodes flattened; a single child is returned as is."""
        flat: List[ContinuityModulus] = []
        for ch in children:
            if isinstance(ch, Min):
                flat.extend(ch.children)
            else:
                flat.append(ch)
        if not flat:
            raise ModulusError("Min needs at least one child")
        if len(flat) == 1:
            return flat[0]
        return cls(tuple(flat))

    def _eval(self, eps):
        return min(ch._eval(eps) for ch in self.children)

    def sup(self):
        return min(ch.sup() for ch in self.children)

    def to_sexpr(self):
        return "(min " + " ".join(ch.to_sexpr() for ch in self.children) + ")"

    def _below_identity(self):
        return any(ch.below_identity for ch in self.children)


@dataclass(frozen=True, eq=True)
class Compose(ContinuityModulus):
    """``outer(inner(eps))``."""

    outer: ContinuityModulus
    inner: ContinuityModulus

    def _eval(self, eps):
        return self.outer._eval(self.inner._eval(eps))

    def sup(self):
        # outer is continuous and increasing, so its sup over the range of
        # inner is outer evaluated at sup(inner)
        s = self.inner.sup()
        if s is INF:
            return self.outer.sup()
        return self.outer._eval(s)

    def to_sexpr(self):
        return f"(compose {self.outer.to_sexpr()} {self.inner.to_sexpr()})"

    def _below_identity(self):
        return self.outer.below_identity and self.inner.below_identity


@dataclass(frozen=True, eq=True)
class ClampTo(ContinuityModulus):
    """``min(c, child(eps))``."""

    c: Fraction
    child: ContinuityModulus = field(default_factory=Identity)

    def __post_init__(self):
        object.__setattr__(self, "c", _positive(self.c, "clamp level"))

    def _eval(self, eps):
        v = self.child._eval(eps)
        return v if v < self.c else self.c

    def sup(self):
        return min(self.c, self.child.sup())

    def to_sexpr(self):
        return f"(clamp {format_value(self.c)} {self.child.to_sexpr()})"

    def _below_identity(self):
        return self.child.below_identity


@dataclass(frozen=True, eq=True)
class StandardArity(ContinuityModulus):
    """The standard modulus ``eps / n`` of an n-ary symbol."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ModulusError(f"standard modulus arity must be >= 1, got {self.n!r}")

    def _eval(self, eps):
        return eps / self.n

    def sup(self):
        return INF

    def to_sexpr(self):
        return f"(std {self.n})"

    def _below_identity(self):
        return True


IDENTITY = Identity()


def standard_modulus(arity: int) -> ContinuityModulus:
    """Standard modulus for an n-ary symbol; zero-ary symbols get the identity."""
    return IDENTITY if arity <= 1 else StandardArity(arity)


# ----------------------------------------------------------------------
# Lemma operations
# ----------------------------------------------------------------------


def eval_modulus(delta: ContinuityModulus, eps) -> Fraction:
    return delta(eps)


def sup_modulus(delta: ContinuityModulus) -> ExtendedValue:
    return delta.sup()


def normalize(delta: ContinuityModulus) -> ContinuityModulus:
    """Truncate at the identity: ``eps -> min(eps, delta(eps))``."""
    if isinstance(delta, Identity):
        return delta
    return Min.of(IDENTITY, delta)


def pair_modulus(deltas: Sequence[ContinuityModulus]) -> ContinuityModulus:
    """Modulus of a tuple of maps: the pointwise minimum."""
    deltas = list(deltas)
    if not deltas:
        raise ModulusError("pair_modulus needs a nonempty list")
    return Min.of(*deltas)


def compose_modulus(delta_f: ContinuityModulus, delta_g: ContinuityModulus) -> ContinuityModulus:
    """Modulus of ``g o f``: ``delta_f o delta_g o delta_f``.

    Both arguments must lie below the identity.
    """
    for name, d in (("delta_f", delta_f), ("delta_g", delta_g)):
        if not d.below_identity:
            raise ModulusError(f"compose_modulus requires {name} <= id, got {d.to_sexpr()}")
    return Compose(delta_f, Compose(delta_g, delta_f))


def quantifier_modulus(
    delta_f: ContinuityModulus, delta_g: ContinuityModulus, C
) -> ContinuityModulus:
    """Modulus of ``sup_x f(x, y)`` when ``f(x, y) = g(y)`` for ``nu(x) >= C``.

    Returns ``min(delta_g(eps), delta_f(min(eps, 1/C)))``; the clamp is dropped for ``C = 0``.
    """
    C = as_fraction(C)
    if C < 0:
        raise ModulusError(f"threshold must be nonnegative, got {C}")
    inner: ContinuityModulus = IDENTITY if C == 0 else ClampTo(1 / C, IDENTITY)
    return Min.of(delta_g, Compose(delta_f, inner))


# ----------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------


def modulus_from_sexpr(node) -> ContinuityModulus:
    """Build a modulus from a parsed s-expression."""
    if is_atom(node):
        if str(node) == "id":
            return IDENTITY
        raise ParseError(f"unknown modulus atom '{node}'", position_of(node))
    head = head_of(node)
    args = node[1:]
    try:
        if head == "const" and len(args) == 1:
            return Constant(rational_atom(args[0], "constant"))
        if head == "scale" and len(args) == 2:
            return Scale(rational_atom(args[0], "scale factor"), modulus_from_sexpr(args[1]))
        if head == "clamp" and len(args) == 2:
            return ClampTo(rational_atom(args[0], "clamp level"), modulus_from_sexpr(args[1]))
        if head == "min" and args:
            return Min.of(*(modulus_from_sexpr(a) for a in args))
        if head == "compose" and len(args) == 2:
            return Compose(modulus_from_sexpr(args[0]), modulus_from_sexpr(args[1]))
        if head == "std" and len(args) == 1:
            return StandardArity(natural_atom(args[0], "arity"))
    except ModulusError as exc:
        raise ParseError(str(exc), position_of(node)) from None
    raise ParseError(f"malformed modulus expression '{head}'", position_of(node))


def parse_modulus(text: str) -> ContinuityModulus:
    return modulus_from_sexpr(read_one(text))


# ======================================================================
# Finite maps and the respects check
# ======================================================================


def _object_array(values) -> np.ndarray:
    values = [as_fraction(v) for v in values]
    arr = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        arr[i] = v
    return arr


@dataclass(frozen=True)
class FiniteMap:
    """A map between finite gauged spaces, given by the data the check needs.

    Entry ``i`` is a domain element; ``dom_dist``/``dom_gauge`` describe the
    domain, ``img_dist[i, j]`` is the distance between the images of ``i``
    and ``j`` and ``img_gauge[i]`` is the gauge of the image of ``i``.
    """

    dom_dist: np.ndarray
    dom_gauge: np.ndarray
    img_dist: np.ndarray
    img_gauge: np.ndarray
    labels: Tuple[Any, ...] = ()

    def __post_init__(self):
        m = len(self.dom_gauge)
        for name, arr, shape in (
            ("dom_dist", self.dom_dist, (m, m)),
            ("img_dist", self.img_dist, (m, m)),
            ("img_gauge", self.img_gauge, (m,)),
        ):
            if np.shape(arr) != shape:
                raise ModulusError(f"malformed table: {name} has shape {np.shape(arr)}, expected {shape}")
        for name, arr in (
            ("dom_dist", self.dom_dist),
            ("dom_gauge", self.dom_gauge),
            ("img_dist", self.img_dist),
            ("img_gauge", self.img_gauge),
        ):
            if any(as_fraction(v) < 0 for v in np.ravel(arr)):
                raise ModulusError(f"malformed table: {name} has negative entries")
        for name, arr in (("dom_dist", self.dom_dist), ("img_dist", self.img_dist)):
            if any(arr[i, j] != arr[j, i] for i in range(m) for j in range(i)):
                raise ModulusError(f"malformed table: {name} is not symmetric")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(m)))
        elif len(self.labels) != m:
            raise ModulusError("malformed table: label count does not match the domain")

    @property
    def size(self) -> int:
        return len(self.dom_gauge)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def _domain_power(dist: np.ndarray, gauge: np.ndarray, arity: int):
        n = len(gauge)
        tuples = list(itertools.product(range(n), repeat=arity))
        m = len(tuples)
        dd = np.empty((m, m), dtype=object)
        dg = np.empty(m, dtype=object)
        for a, s in enumerate(tuples):
            dg[a] = max((gauge[i] for i in s), default=Fraction(0))
            for b, t in enumerate(tuples):
                dd[a, b] = max((dist[i, j] for i, j in zip(s, t)), default=Fraction(0))
        return tuples, dd, dg

    @classmethod
    def from_values(
        cls,
        dist: np.ndarray,
        gauge: np.ndarray,
        arity: int,
        value: Callable[[Tuple[int, ...]], Fraction],
        names: Optional[Sequence[str]] = None,
    ) -> "FiniteMap":
        """Real-valued map on the ``arity``-th power; target gauged as ``(|a-b|, a)``."""
        tuples, dd, dg = cls._domain_power(dist, gauge, arity)
        vals = [as_fraction(value(t)) for t in tuples]
        m = len(tuples)
        idist = np.empty((m, m), dtype=object)
        for a in range(m):
            for b in range(m):
                idist[a, b] = abs(vals[a] - vals[b])
        igauge = _object_array(vals)
        return cls(dd, dg, idist, igauge, labels=_labels(tuples, names))

    @classmethod
    def from_function(
        cls,
        dist: np.ndarray,
        gauge: np.ndarray,
        arity: int,
        image: Callable[[Tuple[int, ...]], int],
        names: Optional[Sequence[str]] = None,
    ) -> "FiniteMap":
        """Point-valued map on the ``arity``-th power back into the same space."""
        tuples, dd, dg = cls._domain_power(dist, gauge, arity)
        imgs = [int(image(t)) for t in tuples]
        m = len(tuples)
        idist = np.empty((m, m), dtype=object)
        for a in range(m):
            for b in range(m):
                idist[a, b] = dist[imgs[a], imgs[b]]
        igauge = _object_array([gauge[i] for i in imgs])
        return cls(dd, dg, idist, igauge, labels=_labels(tuples, names))


def _labels(tuples, names) -> Tuple[Any, ...]:
    if names is None:
        return tuple(tuples)
    return tuple("(" + " ".join(names[i] for i in t) + ")" for t in tuples)


class _CachedModulus:
    """Memoized evaluation for repeated epsilons inside one check."""

    def __init__(self, delta: ContinuityModulus):
        self.delta = delta
        self._cache: Dict[Fraction, Fraction] = {}
        self._sup = None

    def __call__(self, eps: Fraction) -> Fraction:
        v = self._cache.get(eps)
        if v is None:
            v = self.delta._eval(eps)
            self._cache[eps] = v
        return v

    def sup(self) -> ExtendedValue:
        if self._sup is None:
            self._sup = self.delta.sup()
        return self._sup


_APPROACH_STEPS = 200


def _approach_below(limit: Fraction, accept: Callable[[Fraction], bool]) -> Fraction:
    """First ``limit * (1 - 2**-k)`` accepted, else ``limit``."""
    for k in range(1, _APPROACH_STEPS):
        eps = limit * (1 - Fraction(1, 2 ** k))
        if accept(eps):
            return eps
    return limit


def _grow(accept: Callable[[Fraction], bool]) -> Fraction:
    eps = Fraction(1)
    for _ in range(_APPROACH_STEPS):
        if accept(eps):
            return eps
        eps *= 2
    return eps


def respects_check(
    table: FiniteMap, delta: ContinuityModulus, limit: Optional[int] = 20
) -> CheckReport:
    """Closed-form check that ``table`` respects ``delta`` under the gauge.

    For the ordered pair ``(x, y)`` let ``V = max(nu(x), nu(y))`` and
    ``eps_hat = 1/V``. The distance clause fails iff
    ``eps* = min(d(fx, fy), eps_hat) > 0`` and ``d(x, y) < delta(eps*)``;
    the gauge clause fails iff ``nu(fx) > 0`` and the supremum of delta below
    ``eps_hat`` exceeds ``max(d(x, y), 1/nu(fx))``.

    Args:
        table: The finite map.
        delta: Candidate modulus.
        limit: Stop after this many violations (``None`` for all).

    Returns:
        CheckReport listing violations with an epsilon witness each.
    """
    report = CheckReport(subject=f"respects {delta.to_sexpr()}")
    dl = _CachedModulus(delta)
    m = table.size
    dd, dg, idist, ig = table.dom_dist, table.dom_gauge, table.img_dist, table.img_gauge
    for i in range(m):
        for j in range(m):
            report.count("pairs")
            V = dg[i] if dg[i] >= dg[j] else dg[j]
            eps_hat = reciprocal(V)
            dx = dd[i, j]
            D = idist[i, j]
            if D > 0:
                eps_star = D if eps_hat is INF or D <= eps_hat else eps_hat
                if dx < dl(eps_star):
                    witness = _approach_below(eps_star, lambda e: dx < dl(e))
                    report.add(
                        Violation(
                            "distance-clause",
                            (table.labels[i], table.labels[j]),
                            f"d_X={format_value(dx)} < delta(eps) but d_Y={format_value(D)} > eps",
                            epsilon=witness,
                        )
                    )
                    if limit is not None and len(report.violations) >= limit:
                        return report
            gy = ig[i]
            if gy > 0:
                top = dl.sup() if eps_hat is INF else dl(eps_hat)
                need = max(dx, 1 / gy)
                if top > need:
                    if eps_hat is INF:
                        witness = _grow(lambda e: dl(e) > need)
                    else:
                        witness = _approach_below(eps_hat, lambda e: dl(e) > need)
                    report.add(
                        Violation(
                            "gauge-clause",
                            (table.labels[i], table.labels[j]),
                            f"nu(f x)={format_value(gy)} > 1/delta(eps)",
                            epsilon=witness,
                        )
                    )
                    if limit is not None and len(report.violations) >= limit:
                        return report
    return report


def default_grid() -> List[Fraction]:
    return [Fraction(2) ** j for j in range(-24, 41)] + [Fraction(k, 8) for k in range(1, 65)]


def respects_check_grid(
    table: FiniteMap,
    delta: ContinuityModulus,
    grid: Optional[Iterable[Fraction]] = None,
    depth: int = 60,
) -> CheckReport:
    """Evaluate the defining clauses directly at sampled epsilons.

    The sample is ``grid`` plus, per pair, points approaching the two
    critical epsilons from below. Independent of :func:`respects_check`
    and used to cross-validate it.
    """
    base = sorted(set(default_grid() if grid is None else (as_fraction(g) for g in grid)))
    report = CheckReport(subject=f"grid respects {delta.to_sexpr()}")
    dl = _CachedModulus(delta)
    m = table.size
    dd, dg, idist, ig = table.dom_dist, table.dom_gauge, table.img_dist, table.img_gauge
    approach = [1 - Fraction(1, 2 ** k) for k in range(1, depth)]
    for i in range(m):
        for j in range(m):
            V = max(dg[i], dg[j])
            D = idist[i, j]
            extra: List[Fraction] = []
            if V > 0:
                extra += [f / V for f in approach]
            if D > 0:
                extra += [f * D for f in approach]
            found_dist = found_gauge = False
            for eps in itertools.chain(base, extra):
                if V * eps >= 1:
                    continue
                dv = dl(eps)
                if not dd[i, j] < dv:
                    continue
                if not found_dist and D > eps:
                    found_dist = True
                    report.add(Violation("distance-clause", (table.labels[i], table.labels[j]), "grid", epsilon=eps))
                if not found_gauge and ig[i] * dv > 1:
                    found_gauge = True
                    report.add(Violation("gauge-clause", (table.labels[i], table.labels[j]), "grid", epsilon=eps))
                if found_dist and found_gauge:
                    break
    return report
