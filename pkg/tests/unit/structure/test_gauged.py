"""
Tests for finite gauged structures, evaluation and the graph transform.
"""

from fractions import Fraction

import numpy as np
import pytest

from gaugex.core.errors import StructureError, UnassignedVariableError
from gaugex.core.modulus import IDENTITY
from gaugex.runner.corpus import corpus_signature
from gaugex.structure.evaluate import Evaluator, eval_formula, eval_term, evaluation_table
from gaugex.structure.gauged import GaugedStructure, validate
from gaugex.structure.graph import graph_transform
from gaugex.syntax.formula import ONE, App, Inf, Sub, Sup, Var, dist, dyadic_const, nu
from gaugex.syntax.signature import PRED, Signature, Symbol

ONE_MINUS_NU = Sub(ONE, nu("x"))


def pair(d, gauges, P=None):
    """Two points a, b at distance ``d``; optionally a unary predicate table."""
    sig = Signature([Symbol("P", 1, IDENTITY, PRED)]) if P is not None else Signature()
    preds = {"P": P} if P is not None else {}
    return GaugedStructure(sig, ["a", "b"], [[0, d], [d, 0]], gauges, preds)


def empty():
    return GaugedStructure(Signature(), [], np.empty((0, 0), dtype=object), [])


class TestConstruction:
    """Building gauged structures from tables."""

    def test_tables_are_fractions_and_frozen(self, line_structure):
        """Tables hold fractions and cannot be written to."""
        M = line_structure
        assert M.size == 5
        assert M.points == ("z", "a1", "b1", "a2", "b2")
        assert M.gauge[3] == 2
        assert isinstance(M.dist[1, 2], Fraction)
        with pytest.raises(ValueError):
            M.dist[0, 1] = Fraction(7)

    def test_missing_table(self):
        """Every declared symbol needs a table."""
        with pytest.raises(StructureError, match="missing table"):
            GaugedStructure(corpus_signature(), ["z"], [[0]], [0], {"P": [0]}, {"neg": [0], "o": 0})

    def test_undeclared_table(self):
        """Tables for undeclared symbols are refused."""
        with pytest.raises(StructureError, match="undeclared"):
            GaugedStructure(Signature(), ["a"], [[0]], [0], {"R": [1]})

    def test_function_out_of_range(self):
        """Function tables must point at existing points."""
        sig = Signature([Symbol("f", 1, IDENTITY, "fun")])
        with pytest.raises(StructureError, match="outside"):
            GaugedStructure(sig, ["a"], [[0]], [0], {}, {"f": [3]})

    def test_duplicate_points(self):
        """Point names are unique."""
        with pytest.raises(StructureError):
            GaugedStructure(Signature(), ["a", "a"], [[0, 1], [1, 0]], [0, 0])

    def test_unknown_point(self, line_structure):
        """Looking up an unknown point raises."""
        with pytest.raises(StructureError):
            line_structure.index("w")


class TestValidate:
    """Metric, gauge and modulus checks on a structure."""

    def test_one_point(self):
        """A one-point structure is valid."""
        M = GaugedStructure(Signature([Symbol("P", 1, IDENTITY)]), ["a"], [[0]], [0], {"P": [0]})
        assert validate(M).passed

    def test_corpus_structure(self, line_structure):
        """The shared line structure is valid."""
        assert validate(line_structure).passed

    def test_gauge_not_lipschitz(self):
        """A gauge jumping faster than the distance is reported."""
        report = validate(pair(1, [0, 5]))
        assert report.first("gauge-lipschitz") is not None

    def test_predicate_modulus(self):
        """A predicate breaking its modulus is reported under its name."""
        report = validate(pair(1, [0, 1], P=[0, 10]))
        assert not report.passed
        assert report.violations[0].check.startswith("modulus[P]")

    def test_moduli_skipped(self):
        """Modulus checks can be switched off."""
        assert validate(pair(1, [0, 1], P=[0, 10]), check_moduli=False).passed

    def test_triangle(self):
        """A triangle violation names its witness points."""
        M = GaugedStructure(
            Signature(), ["a", "b", "c"], [[0, 1, 3], [1, 0, 1], [3, 1, 0]], [0, 0, 0]
        )
        assert validate(M).first("triangle").witness == ("a", "b", "c")


class TestEvaluate:
    """Evaluation of terms and formulas."""

    def test_terms(self, line_structure):
        """Terms evaluate to point names."""
        M = line_structure
        assert eval_term(M, Var("x"), {"x": "a1"}) == "a1"
        assert eval_term(M, App("o", ())) == "z"
        assert eval_term(M, App("neg", (App("neg", (Var("x"),)),)), {"x": "a2"}) == "a2"
        assert eval_term(M, App("neg", (Var("x"),)), {"x": "a2"}) == "b2"

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_quantifier_reaches_infinity(self, n):
        """Quantifiers see the far point whatever its gauge."""
        M = pair(n, [0, n])
        assert eval_formula(M, Sup("x", ONE_MINUS_NU)) == 1
        assert eval_formula(M, Inf("x", ONE_MINUS_NU)) == 0

    def test_empty_structure(self):
        """Quantifiers over no points give 0."""
        assert eval_formula(empty(), Sup("x", ONE_MINUS_NU)) == 0
        assert eval_formula(empty(), Inf("x", ONE_MINUS_NU)) == 0

    def test_dyadic_constant(self, line_structure):
        """Dyadic constants evaluate exactly."""
        assert eval_formula(line_structure, dyadic_const(3, 1)) == Fraction(3, 2)

    def test_atomic_and_truncated_difference(self, line_structure):
        """Distances, gauges and truncated differences evaluate exactly."""
        M = line_structure
        sigma = {"x": "a1", "y": "a2"}
        assert eval_formula(M, dist("x", "y"), sigma) == 1
        assert eval_formula(M, Sub(ONE, dist("x", "y")), sigma) == 0
        assert eval_formula(M, Sub(ONE, nu("x")), {"x": "z"}) == 1

    def test_unassigned(self, line_structure):
        """A free variable without a point raises."""
        with pytest.raises(UnassignedVariableError):
            eval_formula(line_structure, nu("x"))

    def test_foreign_evaluator(self, line_structure, origin_structure):
        """An evaluator bound to another structure is refused."""
        with pytest.raises(StructureError):
            eval_formula(line_structure, ONE, evaluator=Evaluator(origin_structure))

    def test_evaluation_table(self, line_structure):
        """Evaluation tables index every tuple of points."""
        table = evaluation_table(line_structure, dist("x", "y"))
        assert table.size == 25
        assert table.img_gauge[1] == 1  # d(z, a1)
        assert table.labels[1] == "(z a1)"


class TestGraphTransform:
    """Replacing functions by their graph predicates."""

    def test_tables(self, line_structure):
        """Graph predicates hold the distance to the image."""
        M = line_structure
        G = graph_transform(M)
        assert G.signature.is_relational
        a2, b2, z = M.index("a2"), M.index("b2"), M.index("z")
        assert G.predicates["G_neg"][a2, b2] == 0
        assert G.predicates["G_neg"][a2, z] == 2
        assert list(G.predicates["G_o"]) == list(M.gauge)
        assert G.predicates["P"][a2] == 2

    def test_relational_structure_unchanged(self):
        """Relational structures pass through unchanged."""
        M = pair(1, [0, 1])
        assert graph_transform(M).tables_equal(M)
