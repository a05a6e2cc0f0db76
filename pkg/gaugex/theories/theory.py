"""
Theories: closed conditions plus approximate axiom schemes.

Theory file grammar (top-level forms)::

    (signature (pred ...) (fun ...))            ; optional
    (cond [LABEL] FORMULA <= r)                  ; or '=' r
    (scheme [LABEL] (forall x y r) (exists z s) FORMULA)
    (group NAME ITEM ...)                        ; labels items with NAME
    (graph-axioms f ARITY MODULUS)               ; the four graph schemes of f

Scheme radii may be the symbol ``n``. A scheme ``forall^{<r} x exists^{<=s} y phi``
at width ``eps`` becomes the closed condition

    sup_x^{r - eps, r} inf_y^{s, s + eps} phi  <=  0.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import pandas as pd

from gaugex.analysis.classify import Analyzer, require_well_formed
from gaugex.core.errors import TheoryError
from gaugex.core.extended import as_fraction, format_value
from gaugex.core.modulus import modulus_from_sexpr
from gaugex.core.sexpr import (
    expect_atom,
    expect_list,
    head_of,
    is_atom,
    natural_atom,
    position_of,
    rational_atom,
    read_all,
)
from gaugex.structure.evaluate import Evaluator
from gaugex.structure.gauged import GaugedStructure
from gaugex.structure.macros import inf_window, sup_window
from gaugex.syntax.conditions import (
    EQ,
    EXISTS,
    FORALL,
    LE,
    N_RADIUS,
    ApproxScheme,
    Condition,
    GraphScheme,
    Window,
    graph_schemes,
)
from gaugex.syntax.formula import Formula, free_vars
from gaugex.syntax.parse import formula_from_sexpr, parse_signature, signature_from_sexprs
from gaugex.syntax.signature import Signature

logger = logging.getLogger(__name__)

Scheme = Union[ApproxScheme, GraphScheme]

DATA_DIR = Path(__file__).with_name("data")

SHIPPED = {
    "banach": ("banach.thy", "banach_graph.sig"),
    "measure_algebra": ("measure_algebra.thy", "measure_algebra.sig"),
    "graph_axioms": ("graph_axioms.thy", "graph_unary.sig"),
}


@dataclass
class Theory:
    signature: Signature
    conditions: List[Condition] = field(default_factory=list)
    schemes: List[Scheme] = field(default_factory=list)

    @property
    def groups(self) -> List[str]:
        seen: List[str] = []
        for item in list(self.conditions) + list(self.schemes):
            if item.group and item.group not in seen:
                seen.append(item.group)
        return seen

    def __len__(self) -> int:
        return len(self.conditions) + len(self.schemes)


# ======================================================================
# Loading
# ======================================================================


class _TheoryReader:
    def __init__(self, sig: Signature):
        self.sig = sig
        self.conditions: List[Condition] = []
        self.schemes: List[Scheme] = []
        self._count = 0

    def _label(self, node, group: str) -> Tuple[str, list]:
        rest = list(node[1:])
        if rest and is_atom(rest[0]):
            return str(rest[0]), rest[1:]
        self._count += 1
        return f"{group or 'axiom'}#{self._count}", rest

    def item(self, node, group: str = "") -> None:
        head = head_of(node)
        if head == "cond":
            self.condition(node, group)
        elif head == "scheme":
            self.scheme(node, group)
        elif head == "group":
            node = expect_list(node, "group", 2)
            name = expect_atom(node[1], "group name")
            for sub in node[2:]:
                self.item(sub, name)
        elif head == "graph-axioms":
            node = expect_list(node, "graph-axioms", 4)
            fn = expect_atom(node[1], "function name")
            arity = natural_atom(node[2], "arity")
            self.schemes.extend(graph_schemes(fn, arity, modulus_from_sexpr(node[3]), group))
        else:
            raise TheoryError(f"unknown theory form '{head}' at offset {position_of(node)}")

    def condition(self, node, group: str) -> None:
        label, rest = self._label(node, group)
        if len(rest) != 3:
            raise TheoryError(f"expected (cond [LABEL] FORMULA <= r) at offset {position_of(node)}")
        phi = formula_from_sexpr(rest[0], self.sig)
        relation = expect_atom(rest[1], "relation")
        if relation not in (LE, EQ):
            raise TheoryError(f"condition relation must be '<=' or '=', got '{relation}'")
        require_well_formed(phi)
        if free_vars(phi):
            raise TheoryError(f"condition '{label}' has free variables {sorted(free_vars(phi))}")
        self.conditions.append(Condition(phi, relation, rational_atom(rest[2], "threshold"), label, group))

    def scheme(self, node, group: str) -> None:
        label, rest = self._label(node, group)
        if not rest:
            raise TheoryError(f"scheme '{label}' has no matrix")
        windows = []
        for w in rest[:-1]:
            w = expect_list(w, "scheme window", 3)
            kind = head_of(w)
            if kind not in (FORALL, EXISTS):
                raise TheoryError(f"window must start with forall or exists at offset {position_of(w)}")
            names = tuple(expect_atom(v, "variable") for v in w[1:-1])
            radius_node = w[-1]
            radius = N_RADIUS if str(radius_node) == N_RADIUS else rational_atom(radius_node, "radius")
            windows.append(Window(kind, names, radius))
        matrix = formula_from_sexpr(rest[-1], self.sig)
        require_well_formed(matrix)
        bound = {v for w in windows for v in w.variables}
        loose = free_vars(matrix) - bound
        if loose:
            raise TheoryError(f"scheme '{label}' leaves {sorted(loose)} unquantified")
        self.schemes.append(ApproxScheme(matrix, tuple(windows), label, group))


def load_theory(text: str, sig: Optional[Signature] = None) -> Theory:
    """Parse a theory; an inline ``(signature ...)`` block overrides ``sig``."""
    forms = read_all(text)
    inline = [f for f in forms if head_of(f) == "signature"]
    if inline:
        sig = signature_from_sexprs(inline[0][1:])
    if sig is None:
        raise TheoryError("theory has no signature and none was supplied")
    reader = _TheoryReader(sig)
    for form in forms:
        if head_of(form) != "signature":
            reader.item(form)
    logger.debug("loaded theory: %d conditions, %d schemes", len(reader.conditions), len(reader.schemes))
    return Theory(sig, reader.conditions, reader.schemes)


def load_theory_file(path: Union[str, Path], sig: Optional[Signature] = None) -> Theory:
    path = Path(path).expanduser()
    if not path.exists():
        raise FileNotFoundError(f"Theory file not found: {path}")
    return load_theory(path.read_text(), sig)


def shipped_signature(name: str) -> Signature:
    return parse_signature((DATA_DIR / name).read_text())


def load_shipped_theory(name: str) -> Theory:
    """One of ``banach``, ``measure_algebra``, ``graph_axioms``."""
    try:
        thy, sig = SHIPPED[name]
    except KeyError:
        raise TheoryError(f"no shipped theory '{name}'; choose from {sorted(SHIPPED)}") from None
    return load_theory((DATA_DIR / thy).read_text(), shipped_signature(sig))


# ======================================================================
# Instantiation
# ======================================================================


def _expand(scheme: ApproxScheme, width: Fraction) -> Formula:
    for w in scheme.windows:
        if w.kind == FORALL and width >= w.radius:
            raise TheoryError(
                f"scheme '{scheme.label}': width {format_value(width)} must be below radius {format_value(w.radius)}"
            )
    phi = scheme.matrix
    for w in reversed(scheme.windows):
        for x in reversed(w.variables):
            if w.kind == FORALL:
                phi = sup_window(phi, x, w.radius - width, w.radius)
            else:
                phi = inf_window(phi, x, w.radius, w.radius + width)
    return phi


def instantiate_scheme(scheme: Scheme, eps, n=None) -> Condition:
    """Closed condition ``... <= 0`` for one scheme instance.

    Graph schemes take ``eps`` as their own parameter and use the window
    width ``min(eps, r / 2)`` for the smallest universal radius ``r``.
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise TheoryError("scheme epsilon must be positive")
    if isinstance(scheme, GraphScheme):
        approx = scheme.at(None if scheme.parametric else eps).at(n)
        radii = approx.universal_radii
        width = min([eps] + [r / 2 for r in radii])
    else:
        approx = scheme.at(n)
        width = eps
    phi = _expand(approx, width)
    tag = f"eps={format_value(eps)}" + ("" if n is None else f",n={format_value(as_fraction(n))}")
    return Condition(phi, LE, Fraction(0), f"{approx.label}[{tag}]", approx.group)


# ======================================================================
# Checking
# ======================================================================


@dataclass(frozen=True)
class DefectRow:
    label: str
    group: str
    value: Fraction
    defect: Fraction
    eps: Optional[Fraction] = None
    n: Optional[Fraction] = None


@dataclass
class DefectReport:
    """Exact defects of every condition and scheme instance of a theory."""

    rows: List[DefectRow] = field(default_factory=list)
    skipped: List[Tuple[str, Fraction, Optional[Fraction]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.defect == 0 for r in self.rows)

    @property
    def max_defect(self) -> Fraction:
        return max((r.defect for r in self.rows), default=Fraction(0))

    def failures(self) -> List[DefectRow]:
        return [r for r in self.rows if r.defect > 0]

    def by_label(self, prefix: str) -> List[DefectRow]:
        return [r for r in self.rows if r.label.startswith(prefix)]

    def to_frame(self) -> pd.DataFrame:
        def fmt(v):
            return None if v is None else format_value(v)

        return pd.DataFrame(
            [
                {
                    "label": r.label,
                    "group": r.group,
                    "eps": fmt(r.eps),
                    "n": fmt(r.n),
                    "value": fmt(r.value),
                    "defect": fmt(r.defect),
                }
                for r in self.rows
            ],
            columns=["label", "group", "eps", "n", "value", "defect"],
        )


def _params(scheme: Scheme, eps_list, n_list):
    parametric = scheme.parametric
    ns = list(n_list) if parametric else [None]
    return [(e, n) for n in ns for e in eps_list]


def check_theory(
    M: GaugedStructure,
    T: Theory,
    eps_list: Sequence = (Fraction(1), Fraction(1, 2), Fraction(1, 4)),
    n_list: Sequence = (1, 2),
) -> DefectReport:
    """Evaluate every condition and every scheme instance in ``M``.

    Instances whose width is not below a universal radius are listed in
    ``skipped`` rather than evaluated.
    """
    if M.signature.shape() != T.signature.shape():
        raise TheoryError("structure and theory signatures differ")
    report = DefectReport()
    ev = Evaluator(M, Analyzer())
    for c in T.conditions:
        value = ev.formula(c.formula, {})
        report.rows.append(DefectRow(c.label, c.group, value, c.defect(value)))
    for s in T.schemes:
        for eps, n in _params(s, [as_fraction(e) for e in eps_list], [as_fraction(k) for k in n_list]):
            try:
                c = instantiate_scheme(s, eps, n)
            except TheoryError as exc:
                logger.debug("skip %s at eps=%s n=%s: %s", s.label, eps, n, exc)
                report.skipped.append((s.label, eps, n))
                continue
            value = ev.formula(c.formula, {})
            report.rows.append(DefectRow(c.label, c.group, value, c.defect(value), eps, n))
    logger.info("checked %d instances, max defect %s", len(report.rows), format_value(report.max_defect))
    return report


def matrix_sup(M: GaugedStructure, scheme: ApproxScheme, evaluator: Optional[Evaluator] = None) -> Fraction:
    """Largest value of a universal scheme's matrix over every tuple of points.

    A universal instance never exceeds the supremum of its matrix over the
    points inside its outer radius, so a zero here gives defect 0 at every
    width and every radius.
    """
    if not scheme.windows or any(w.kind != FORALL for w in scheme.windows):
        raise TheoryError(f"scheme '{scheme.label}' is not universal")
    ev = evaluator or Evaluator(M, Analyzer())
    variables = [x for w in scheme.windows for x in w.variables]
    best = Fraction(0)
    for combo in itertools.product(range(M.size), repeat=len(variables)):
        best = max(best, ev.formula(scheme.matrix, dict(zip(variables, combo))))
    return best
