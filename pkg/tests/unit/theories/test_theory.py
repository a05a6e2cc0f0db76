"""
Tests for theory loading, scheme instantiation and exact defect checking.
"""

from fractions import Fraction

import pytest

from gaugex.core.errors import CapExceededError, IllFormedFormulaError, StructureError, TheoryError
from gaugex.runner.corpus import measure_weights
from gaugex.structure.evaluate import Evaluator
from gaugex.structure.gauged import GaugedStructure
from gaugex.syntax.conditions import EQ, GraphScheme
from gaugex.syntax.formula import Sup
from gaugex.theories.models import measure_algebra, sampled_normed_structure
from gaugex.theories.theory import (
    Theory,
    check_theory,
    instantiate_scheme,
    load_shipped_theory,
    load_theory,
    load_theory_file,
    matrix_sup,
    shipped_signature,
)

F = Fraction

SMALL = """
(signature (pred P 1 id))
(cond small (sup x (sub (sub (const 1) (P x)) (nu x))) <= 1/2)
(scheme (forall x 2) (P x))
"""


class TestLoading:
    """Reading theory files: forms, groups, labels and their errors."""

    def test_inline_signature(self):
        """An inline signature block is used and unlabelled schemes are numbered."""
        T = load_theory(SMALL)
        assert len(T) == 2
        assert T.conditions[0].label == "small"
        assert T.conditions[0].threshold == F(1, 2)
        assert T.schemes[0].label == "axiom#1"

    def test_groups(self):
        """Items inside a group carry the group name and group-based labels."""
        T = load_theory("(signature (pred P 1 id)) (group g (cond (const 1) = 1) (scheme (forall x n) (P x)))")
        assert T.groups == ["g"]
        assert T.conditions[0].relation == EQ
        assert T.schemes[0].label == "g#2"

    def test_no_signature(self):
        """A theory without any signature is rejected."""
        with pytest.raises(TheoryError, match="no signature"):
            load_theory("(cond (const 1) <= 1)")

    @pytest.mark.parametrize(
        "text,match",
        [
            ("(cond (P x) <= 0)", "free variables"),
            ("(cond (P o) < 0)", "relation"),
            ("(axiom (P o))", "unknown theory form"),
            ("(scheme (forall x 1) (add (P x) (P y)))", "unquantified"),
            ("(scheme (some x 1) (P x))", "forall or exists"),
        ],
    )
    def test_malformed(self, text, match):
        """Malformed conditions and schemes raise with a pointed message."""
        with pytest.raises(TheoryError, match=match):
            load_theory("(signature (pred P 1 id) (fun o 0 id))" + text)

    def test_ill_formed_condition(self):
        """A condition whose formula is ill-formed is rejected at load time."""
        with pytest.raises(IllFormedFormulaError):
            load_theory("(signature) (cond (sup x (nu x)) <= 0)")

    def test_file(self, tmp_path):
        """Theories load from disk and a missing file is reported."""
        path = tmp_path / "small.thy"
        path.write_text(SMALL)
        assert len(load_theory_file(path)) == 2
        with pytest.raises(FileNotFoundError):
            load_theory_file(tmp_path / "missing.thy")

    def test_shipped(self):
        """The shipped theories have the expected groups and scheme kinds."""
        ma = load_shipped_theory("measure_algebra")
        assert ma.groups == ["zero", "lattice", "modularity", "metric", "atomless"]
        banach = load_shipped_theory("banach")
        assert sum(isinstance(s, GraphScheme) for s in banach.schemes) == 20
        graph = load_shipped_theory("graph_axioms")
        assert [s.kind for s in graph.schemes] == ["graph-left", "graph-right", "graph-exists", "graph-modulus"]
        with pytest.raises(TheoryError):
            load_shipped_theory("groups")


class TestInstantiate:
    """Turning schemes into closed window conditions."""

    def test_universal_window(self):
        """A universal scheme becomes a sup window with threshold 0."""
        scheme = load_theory(SMALL).schemes[0]
        c = instantiate_scheme(scheme, F(1, 2))
        assert isinstance(c.formula, Sup)
        assert c.threshold == 0
        assert c.label == "axiom#1[eps=1/2]"

    def test_symbolic_radius_needs_n(self):
        """A radius written as n needs a value for n."""
        scheme = load_theory("(signature (pred P 1 id)) (scheme s (forall x n) (P x))").schemes[0]
        with pytest.raises(TheoryError):
            instantiate_scheme(scheme, F(1, 4))
        assert instantiate_scheme(scheme, F(1, 4), 2).label == "s[eps=1/4,n=2]"

    @pytest.mark.parametrize("eps", [F(2), F(3), F(0), F(-1)])
    def test_bad_width(self, eps):
        """Widths that are not positive or not below the radius are refused."""
        with pytest.raises(TheoryError):
            instantiate_scheme(load_theory(SMALL).schemes[0], eps)

    def test_graph_scheme_width_below_radius(self):
        """Graph schemes shrink their width below their radius."""
        exists = load_shipped_theory("graph_axioms").schemes[2]
        c = instantiate_scheme(exists, F(1))
        assert c.label == "graph-exists[f][eps=1]"


class TestMeasureAlgebra:
    """Finite measure algebras against the measure algebra theory."""

    def test_single_atom(self):
        """One atom gives the two-point algebra with distance and gauge 1."""
        M = measure_algebra([1])
        assert M.points == ("m0", "m1")
        assert M.dist[0, 1] == 1
        assert list(M.gauge) == [0, 1]

    def test_two_atoms(self):
        """Lattice operations are set operations on the membership bits."""
        M = measure_algebra([F(1, 2), F(1, 2)])
        assert M.size == 4
        m10, m01, m11 = M.index("m10"), M.index("m01"), M.index("m11")
        assert M.apply("join", (m10, m01)) == m11
        assert M.apply("meet", (m10, m01)) == M.index("m00")
        assert M.apply("minus", (m11, m01)) == m10
        assert M.dist[m10, m01] == 1

    @pytest.mark.parametrize("weights", [[], [0], [1, -1]])
    def test_invalid(self, weights):
        """Empty or non-positive weight vectors are rejected."""
        with pytest.raises(StructureError):
            measure_algebra(weights)

    def test_cap(self):
        """More atoms than the cap raise before the tables are built."""
        with pytest.raises(CapExceededError):
            measure_algebra([1] * 5)

    def test_universal_axioms_hold(self):
        """Every universal axiom has defect 0; atomless at width 1 and n=1 is skipped."""
        report = check_theory(measure_algebra([F(1, 2), F(1, 2)]), load_shipped_theory("measure_algebra"))
        assert all(r.defect == 0 for r in report.rows if r.group != "atomless")
        assert ("atomless", F(1), F(1)) in report.skipped

    def test_atom_defect(self):
        """Atomless defects pinned at eps=1/2.

        One atom of weight 1: at n=1 the atom has nu = 1, which is not below
        the radius, so only the empty set is quantified over and the defect is
        0. At n=2 the atom is inside and cannot be split, giving 1/2. Two atoms
        of weight 1/2 at n=2 give 1/4.
        """
        T = load_shipped_theory("measure_algebra")
        single = check_theory(measure_algebra([1]), T, eps_list=[F(1, 2)], n_list=[1, 2])
        by_n = {r.n: r.defect for r in single.by_label("atomless")}
        assert by_n == {F(1): 0, F(2): F(1, 2)}
        halves = check_theory(measure_algebra([F(1, 2), F(1, 2)]), T, eps_list=[F(1, 2)], n_list=[2])
        assert [r.defect for r in halves.by_label("atomless")] == [F(1, 4)]
        assert halves.max_defect == F(1, 4)
        assert not halves.passed

    def test_universal_matrices_vanish_for_small_weights(self):
        """Universal matrices vanish for every weight vector of up to two atoms, denominators up to 4."""
        T = load_shipped_theory("measure_algebra")
        schemes = [s for s in T.schemes if s.group in ("lattice", "modularity", "metric")]
        for w in measure_weights(2, 4):
            A = measure_algebra(w)
            ev = Evaluator(A)
            assert [s.label for s in schemes if matrix_sup(A, s, ev) != 0] == [], w

    def test_matrix_sup_bounds_instances(self):
        """The matrix supremum bounds every instance of the scheme."""
        scheme = load_theory("(signature) (scheme s (forall x n) (nu x))").schemes[0]
        A = measure_algebra([F(1, 2), F(1, 2)])
        assert matrix_sup(A, scheme) == 1
        T = Theory(A.signature, [], [scheme])
        report = check_theory(A, T, [F(1, 2), F(1, 4)], [1, 2])
        assert report.rows and all(r.defect <= 1 for r in report.rows)

    def test_matrix_sup_needs_universal_scheme(self):
        """Schemes with an existential window have no matrix supremum."""
        atomless = load_shipped_theory("measure_algebra").schemes[-1]
        with pytest.raises(TheoryError, match="not universal"):
            matrix_sup(measure_algebra([1]), atomless)

    def test_frame(self):
        """The defect report renders as a frame; conditions have no width."""
        report = check_theory(measure_algebra([1]), load_shipped_theory("measure_algebra"), [F(1, 2)], [1])
        frame = report.to_frame()
        assert list(frame.columns) == ["label", "group", "eps", "n", "value", "defect"]
        assert frame.loc[frame["label"] == "measure-zero", "eps"].isna().all()


class TestBanach:
    """Sampled normed spaces against the Banach space theory."""

    def test_sample(self):
        """The one-dimensional sample has three points with graph tables of the norm."""
        M = sampled_normed_structure(1)
        assert M.points == ("v<-1>", "v<0>", "v<1>")
        assert list(M.gauge) == [1, 0, 1]
        assert M.predicates["G_plus"][2, 2, 0] == 3

    def test_universal_axioms_hold(self):
        """The norm, addition and scaling schemes have defect 0 on the sample."""
        T = load_shipped_theory("banach")
        core = Theory(T.signature, [], [s for s in T.schemes if s.group in ("norm", "addition", "scaling")])
        report = check_theory(sampled_normed_structure(1), core, [F(1, 2)], [1, 2])
        assert report.rows and report.passed


class TestGraphAxioms:
    """The four graph schemes of a unary function."""

    def structure(self, graph):
        return GaugedStructure(
            shipped_signature("graph_unary.sig"), ["a", "b"], [[0, 1], [1, 0]], [0, 1], {"P": [0, 1], "G_f": graph}
        )

    def test_genuine_function(self):
        """The graph of a real function satisfies all four schemes."""
        M = self.structure([[0, 1], [1, 0]])
        assert check_theory(M, load_shipped_theory("graph_axioms"), [F(1), F(1, 2)], [1, 2]).passed

    def test_no_image(self):
        """A graph that never comes close to 0 fails the existence scheme."""
        M = self.structure([[1, 1], [1, 1]])
        report = check_theory(M, load_shipped_theory("graph_axioms"), [F(1)], [1])
        assert any(r.label.startswith("graph-exists[f]") for r in report.failures())

    def test_signature_mismatch(self):
        """Checking against a theory for another signature raises."""
        with pytest.raises(TheoryError):
            check_theory(measure_algebra([1]), load_shipped_theory("graph_axioms"))
