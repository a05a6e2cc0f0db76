"""
Tests for l1/linf operator norms, simplex minima, dual functionals and the
perturbation certificate.
"""

from fractions import Fraction

import numpy as np
import pytest

from gaugex.banach.lp import dual_functionals, simplex_min, simplex_min_norm, simplex_min_norm_grid
from gaugex.banach.norms import L1, LINF, NormedSpace, eps_iso_check, exp_bounds, op_norm
from gaugex.banach.perturbation import build_perturbation, certify_delta, certify_trials, random_targets
from gaugex.core.errors import BanachMazurError, CapExceededError, DependentVectorsError, SingularMapError

F = Fraction


class TestNormedSpace:
    """The l1 and linf spaces and their duals."""

    @pytest.mark.parametrize("text,dim,kind", [("l1:3", 3, L1), ("linf:2", 2, LINF), ("LOO:1", 1, LINF)])
    def test_parse(self, text, dim, kind):
        """Space names parse case-insensitively, with oo for infinity."""
        assert NormedSpace.parse(text) == NormedSpace(dim, kind)

    @pytest.mark.parametrize("text", ["l2:3", "l1", "l1:x"])
    def test_parse_errors(self, text):
        """Unknown norms and missing or bad dimensions are rejected."""
        with pytest.raises(BanachMazurError):
            NormedSpace.parse(text)

    def test_invalid(self):
        """Dimension 0 is not a space."""
        with pytest.raises(BanachMazurError):
            NormedSpace(0)

    def test_dual(self):
        """l1 and linf are dual and the norms are the usual ones."""
        space = NormedSpace(2, L1)
        assert space.dual == NormedSpace(2, LINF)
        assert space.norm([3, -4]) == 7
        assert space.dual_norm([3, -4]) == 4
        assert str(space) == "l1:2"


class TestOperatorNorm:
    """Operator norms as maximal column or row sums."""

    def test_identity(self):
        """The identity has norm 1 in both spaces."""
        for kind in (L1, LINF):
            assert op_norm(np.identity(3), NormedSpace(3, kind)) == 1

    def test_exact_examples(self, frac):
        """Rational matrices give exact norms."""
        assert op_norm(frac([[2, 0], [0, F(1, 2)]]), NormedSpace(2, LINF)) == 2
        assert op_norm(frac([[0, 1], [1, 0]]), NormedSpace(2, L1)) == 1

    def test_rows_and_columns(self):
        """l1 takes the largest column sum, linf the largest row sum."""
        A = np.array([[1.0, -2.0], [3.0, 0.5]])
        assert op_norm(A, NormedSpace(2, L1)) == pytest.approx(4.0)
        assert op_norm(A, NormedSpace(2, LINF)) == pytest.approx(3.5)

    def test_not_a_matrix(self):
        """A vector is not an operator."""
        with pytest.raises(BanachMazurError):
            op_norm([1, 2], NormedSpace(2))

    def test_exp_bounds(self):
        """The rounded bounds enclose e^0."""
        lo, hi = exp_bounds(0)
        assert lo < 1 < hi


class TestIsoCheck:
    """Checking that a map and its inverse have norm at most e^eps."""

    def test_identity(self):
        """The identity is a 0-isomorphism."""
        assert eps_iso_check(np.identity(2), 0, NormedSpace(2))

    def test_diagonal(self):
        """diag(2, 1/2) is a 1-isomorphism but not a 1/2-isomorphism."""
        space = NormedSpace(2, LINF)
        D = np.diag([2.0, 0.5])
        assert eps_iso_check(D, 1, space).ok
        check = eps_iso_check(D, F(1, 2), space)
        assert not check.ok
        assert check.norm == pytest.approx(2.0)
        assert check.inverse_norm == pytest.approx(2.0)

    def test_singular(self):
        """A singular map has no inverse to check."""
        with pytest.raises(SingularMapError):
            eps_iso_check([[1, 1], [1, 1]], F(1, 2), NormedSpace(2))

    @pytest.mark.parametrize("eps,matrix", [(-1, np.identity(2)), (F(1, 2), np.identity(3))])
    def test_bad_arguments(self, eps, matrix):
        """Negative eps and mismatched dimensions are rejected."""
        with pytest.raises(BanachMazurError):
            eps_iso_check(matrix, eps, NormedSpace(2))


class TestSimplexMin:
    """Minimum norm over the l1 unit sphere of coefficients."""

    def test_l1_basis(self):
        """The l1 basis attains 1."""
        assert simplex_min_norm(np.identity(2), NormedSpace(2, L1)) == pytest.approx(1.0)

    def test_linf_basis(self):
        """The linf basis attains 1/2 with coefficients of total weight 1."""
        value, lam = simplex_min(np.identity(2), NormedSpace(2, LINF))
        assert value == pytest.approx(0.5)
        assert np.abs(lam).sum() == pytest.approx(1.0)

    def test_single_vector(self):
        """A single vector gives its own norm."""
        assert simplex_min_norm([[1.0, 2.0]], NormedSpace(2, L1)) == pytest.approx(3.0)

    def test_dependent(self):
        """Dependent vectors, including too many vectors, are rejected."""
        with pytest.raises(DependentVectorsError):
            simplex_min_norm([[1, 0], [2, 0]], NormedSpace(2))
        with pytest.raises(DependentVectorsError):
            simplex_min_norm([[1, 0], [0, 1], [1, 1]], NormedSpace(2))

    def test_cap(self):
        """More vectors than the cap raise."""
        with pytest.raises(CapExceededError):
            simplex_min_norm(np.identity(7), NormedSpace(7), cap=6)

    def test_matches_grid(self, rng):
        """The linear program and the grid oracle agree on random pairs."""
        for kind in (L1, LINF):
            space = NormedSpace(3, kind)
            for _ in range(5):
                B = rng.uniform(-1.0, 1.0, size=(2, 3))
                assert simplex_min_norm_grid(B, space) == pytest.approx(simplex_min_norm(B, space), abs=1e-6)

    def test_grid_single_vector(self):
        """The grid oracle handles a single vector."""
        assert simplex_min_norm_grid([[3.0, 0.0]], NormedSpace(2, L1)) == 3.0


class TestDualFunctionals:
    """Biorthogonal functionals of least dual norm."""

    def test_basis(self):
        """The basis has the coordinate functionals."""
        H = dual_functionals(np.identity(3), NormedSpace(3, L1))
        assert np.allclose(H, np.identity(3))

    def test_least_norm(self):
        """The least-norm functional of (1, 1) in l1 splits evenly."""
        H = dual_functionals([[1.0, 1.0]], NormedSpace(2, L1))
        assert np.allclose(H, [[0.5, 0.5]])

    def test_biorthogonal(self, rng):
        """Functionals evaluate to the identity on random bases."""
        for kind in (L1, LINF):
            B = rng.uniform(-1.0, 1.0, size=(2, 3))
            H = dual_functionals(B, NormedSpace(3, kind))
            assert np.allclose(H @ B.T, np.identity(2))


class TestPerturbation:
    """Perturbing a basis onto nearby targets."""

    @pytest.mark.parametrize(
        "vectors,eps,expected",
        [(np.identity(2), F(1, 4), 1 / 16), ([[1.0, 0.0]], F(1, 2), 1 / 4), (np.identity(2), "1/4", 1 / 16)],
    )
    def test_certify_delta(self, vectors, eps, expected):
        """Certified radii for the pinned examples, with eps given as text too."""
        assert certify_delta(vectors, eps, NormedSpace(2, L1)) == pytest.approx(expected)

    @pytest.mark.parametrize("eps", [0, F(3, 4)])
    def test_epsilon_range(self, eps):
        """Only 0 < eps <= 1/2 is certified."""
        with pytest.raises(BanachMazurError):
            certify_delta(np.identity(2), eps, NormedSpace(2))

    def test_maps_basis_to_targets(self):
        """T sends the basis onto the targets and S + T is the identity."""
        B = np.identity(2)
        C = np.array([[1.0, 0.01], [-0.02, 1.0]])
        P = build_perturbation(B, C, NormedSpace(2, L1))
        assert np.allclose(P.T @ B.T, C.T)
        assert np.allclose(P.S + P.T, np.identity(2))

    def test_shape_mismatch(self):
        """Basis and targets must have the same shape."""
        with pytest.raises(BanachMazurError):
            build_perturbation(np.identity(2), [[1.0, 0.0]], NormedSpace(2))

    def test_random_targets_within_delta(self, rng):
        """Random targets stay within delta of the basis."""
        space = NormedSpace(3, LINF)
        B = rng.uniform(-1.0, 1.0, size=(3, 3))
        C = random_targets(B, 0.1, space, rng)
        assert all(space.norm(b - c) <= 0.1 + 1e-12 for b, c in zip(B, C))

    @pytest.mark.parametrize("kind", [L1, LINF])
    def test_certify_trials(self, rng, kind):
        """Every randomized trial gives an eps-isomorphism with small S."""
        B = np.identity(3) + rng.uniform(-0.2, 0.2, size=(3, 3))
        report = certify_trials(B, F(1, 2), NormedSpace(3, kind), trials=50, rng=rng)
        assert report.passed
        assert report.trials == 50
        assert report.max_s_norm <= 0.25 + 1e-9
        assert report.as_dict()["failures"] == 0
