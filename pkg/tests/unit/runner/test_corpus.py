"""
Tests for the random corpus used by the property suites.
"""

from fractions import Fraction

import numpy as np

from gaugex.analysis.classify import is_bounded, well_formed
from gaugex.runner.corpus import (
    corpus_signature,
    measure_weights,
    random_assignment,
    random_basis,
    random_finite_map,
    random_formulas,
    random_modulus,
    random_structures,
    random_weights,
    structure_from_vectors,
)
from gaugex.structure.gauged import validate
from gaugex.syntax.formula import free_vars


class TestStructures:
    """Corpus structures."""

    def test_from_vectors(self, line_structure):
        """Line structures carry the corpus signature and tables."""
        M = line_structure
        assert M.signature == corpus_signature()
        assert M.predicates["Q"][M.index("a1"), M.index("a2")] == 0
        assert M.predicates["P"][M.index("b2")] == 2

    def test_origin_only(self, origin_structure):
        """The origin structure has one point."""
        assert origin_structure.points == ("z",)

    def test_random_structures_valid(self, rng):
        """Random structures are small, symmetric and valid."""
        for M in random_structures(rng, 15):
            assert M.size % 2 == 1 and M.size <= 5
            assert validate(M).passed

    def test_reproducible(self):
        """The same seed gives the same structures."""
        a = random_structures(np.random.default_rng(7), 5)
        b = random_structures(np.random.default_rng(7), 5)
        assert all(x.tables_equal(y) for x, y in zip(a, b))

    def test_single_pair(self):
        """One vector gives the origin and a pair of points."""
        M = structure_from_vectors([(Fraction(1), Fraction(1, 2))])
        assert M.points == ("z", "a1", "b1")


class TestFormulas:
    """Corpus formulas."""

    def test_well_formed(self, rng):
        """Random formulas are well-formed in x and y."""
        for phi in random_formulas(rng, 40, depth=3):
            assert well_formed(phi)[0]
            assert free_vars(phi) <= {"x", "y"}

    def test_bounded(self, rng):
        """Bounded draws are bounded."""
        assert all(is_bounded(phi) for phi in random_formulas(rng, 30, bounded=True, depth=3))

    def test_assignment(self, rng, line_structure):
        """Random assignments cover the requested variables."""
        sigma = random_assignment(rng, line_structure, ["x", "y"])
        assert set(sigma) == {"x", "y"}
        assert set(sigma.values()) <= set(line_structure.points)


class TestTables:
    """Random moduli, maps, weights and bases."""

    def test_random_modulus_positive(self, rng):
        """Random moduli are positive."""
        for _ in range(20):
            assert random_modulus(rng)(Fraction(1, 2)) > 0

    def test_finite_map(self, rng):
        """Finite maps have the requested size."""
        table = random_finite_map(rng, size=4)
        assert table.size == 4

    def test_measure_weights(self):
        """Weight vectors are enumerated up to the denominator."""
        assert measure_weights(1, 2) == [(Fraction(1, 2),), (Fraction(1),)]
        assert len(measure_weights(2, 2)) == 5

    def test_random_weights(self, rng):
        """Random weights are positive and at most 1."""
        for _ in range(10):
            w = random_weights(rng, 3, 8)
            assert 1 <= len(w) <= 3
            assert all(0 < x <= 1 for x in w)

    def test_random_basis(self, rng):
        """Random bases have full rank."""
        B = random_basis(rng, 2, 3)
        assert np.linalg.matrix_rank(B) == 2
