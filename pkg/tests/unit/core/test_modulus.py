"""
Tests for the modulus calculus and the respects check.
"""

from fractions import Fraction

import numpy as np
import pytest

from gaugex.core.errors import ModulusError, ParseError
from gaugex.core.extended import INF
from gaugex.core.modulus import (
    IDENTITY,
    ClampTo,
    Compose,
    Constant,
    FiniteMap,
    Min,
    Scale,
    StandardArity,
    compose_modulus,
    eval_modulus,
    normalize,
    pair_modulus,
    parse_modulus,
    quantifier_modulus,
    respects_check,
    respects_check_grid,
    sup_modulus,
)
from gaugex.runner.corpus import random_finite_map, random_modulus

F = Fraction
HALF = Min.of(IDENTITY, Scale(F(1, 2)))
GRID = [F(k, 7) for k in range(1, 60)] + [F(2) ** j for j in range(-8, 9)]


def pointwise_equal(a, b, grid=GRID):
    return all(a(e) == b(e) for e in grid)


class TestEvaluation:
    """Exact evaluation of moduli."""

    def test_identity(self):
        """The identity returns eps."""
        assert eval_modulus(IDENTITY, 3) == 3

    def test_standard_arity(self):
        """The standard modulus of arity n divides by n."""
        assert eval_modulus(StandardArity(2), 6) == 3

    def test_compose_scales(self):
        """Composed scalings multiply."""
        assert eval_modulus(Compose(Scale(F(1, 2)), Scale(F(1, 2))), 8) == 2

    def test_string_epsilon(self):
        """eps may be given as a rational string."""
        assert eval_modulus(Scale(3), "1/3") == 1

    @pytest.mark.parametrize("eps", [0, -1, "-1/2"])
    def test_nonpositive_epsilon_rejected(self, eps):
        """eps must be positive."""
        with pytest.raises(ModulusError):
            eval_modulus(IDENTITY, eps)

    def test_float_epsilon_rejected(self):
        """Floats are refused to keep evaluation exact."""
        with pytest.raises(TypeError):
            eval_modulus(IDENTITY, 0.5)

    @pytest.mark.parametrize(
        "build",
        [lambda: Constant(0), lambda: Scale(-1), lambda: ClampTo(0), lambda: StandardArity(0)],
    )
    def test_nonpositive_parameters_rejected(self, build):
        """Constructors refuse non-positive parameters."""
        with pytest.raises(ModulusError):
            build()


class TestSup:
    """Suprema of moduli over all eps."""

    def test_identity_unbounded(self):
        """The identity is unbounded."""
        assert sup_modulus(IDENTITY) is INF

    def test_clamp(self):
        """A clamp bounds the modulus."""
        assert sup_modulus(ClampTo(F(1, 2), IDENTITY)) == F(1, 2)

    def test_min_with_constant(self):
        """A minimum with a constant is bounded by the constant."""
        assert sup_modulus(Min.of(IDENTITY, Constant(5))) == 5

    def test_compose_through_bounded_inner(self):
        """A bounded inner modulus bounds the composition."""
        assert sup_modulus(Compose(Scale(3), ClampTo(2))) == 6

    def test_scale_of_unbounded(self):
        """Scaling an unbounded modulus stays unbounded."""
        assert sup_modulus(Scale(F(1, 4), StandardArity(3))) is INF


class TestLemmaOperations:
    """Normalizing, pairing, composing and quantifying moduli."""

    def test_normalize_scale(self):
        """Normalizing caps a scaling at the identity."""
        assert normalize(Scale(3))(1) == 1

    def test_normalize_identity(self):
        """The identity is already normal."""
        assert pointwise_equal(normalize(IDENTITY), IDENTITY)

    def test_normalize_constant(self):
        """A normalized constant is the identity up to the constant."""
        d = normalize(Constant(2))
        assert d(F(1, 2)) == F(1, 2)
        assert d(4) == 2
        assert d.below_identity

    def test_pair_single(self):
        """Pairing one modulus returns it."""
        assert pair_modulus([IDENTITY]) == IDENTITY

    def test_pair_standard(self):
        """Pairing takes the pointwise minimum."""
        assert pair_modulus([StandardArity(2), StandardArity(3)])(6) == 2

    def test_pair_below_identity_if_any(self):
        """The pair is below the identity when one component is."""
        assert pair_modulus([IDENTITY, Constant(1)]).below_identity
        assert not pair_modulus([Constant(1), Scale(2)]).below_identity

    def test_pair_empty_rejected(self):
        """Pairing needs at least one modulus."""
        with pytest.raises(ModulusError):
            pair_modulus([])

    def test_compose_identity(self):
        """Composing identities gives the identity."""
        assert pointwise_equal(compose_modulus(IDENTITY, IDENTITY), IDENTITY)

    def test_compose_halves(self):
        """Composing two halvings quarters eps."""
        assert compose_modulus(HALF, HALF)(8) == 1

    def test_compose_half_identity(self):
        """Composing with the identity halves eps only once."""
        assert compose_modulus(HALF, IDENTITY)(4) == 1

    def test_compose_requires_below_identity(self):
        """The inner modulus must be below the identity."""
        with pytest.raises(ModulusError, match="delta_g"):
            compose_modulus(IDENTITY, Scale(2))

    def test_compose_is_below_identity(self):
        """Compositions stay below the identity."""
        assert compose_modulus(HALF, StandardArity(3)).below_identity

    def test_quantifier_unit_threshold(self):
        """Threshold 1 caps the quantifier modulus at 1."""
        assert quantifier_modulus(IDENTITY, IDENTITY, 1)(2) == 1

    def test_quantifier_zero_threshold(self):
        """Threshold 0 leaves the identity unchanged."""
        assert pointwise_equal(quantifier_modulus(IDENTITY, IDENTITY, 0), IDENTITY)

    def test_quantifier_standard(self):
        """The quantifier modulus combines threshold and arity."""
        assert quantifier_modulus(StandardArity(2), IDENTITY, 2)(1) == F(1, 4)

    def test_quantifier_negative_threshold(self):
        """A negative threshold is rejected."""
        with pytest.raises(ModulusError):
            quantifier_modulus(IDENTITY, IDENTITY, -1)

    def test_quantifier_below_g(self, rng):
        """The quantifier modulus never exceeds the gauge modulus."""
        for _ in range(50):
            f, g = random_modulus(rng), random_modulus(rng)
            C = F(int(rng.integers(0, 9)), 4)
            q = quantifier_modulus(f, g, C)
            assert all(q(e) <= g(e) for e in GRID)


class TestMonotone:
    """Monotonicity of generated moduli."""

    def test_random_moduli_increasing(self, rng):
        """Random moduli are positive and non-decreasing on the grid."""
        grid = sorted(GRID)
        for _ in range(100):
            d = random_modulus(rng)
            values = [d(e) for e in grid]
            assert all(v > 0 for v in values)
            assert values == sorted(values), d.to_sexpr()

    def test_compose_associative_nesting(self, rng):
        """Nested compositions agree pointwise with their unfolded form."""
        for _ in range(30):
            a, b, c = (normalize(random_modulus(rng)) for _ in range(3))
            left = compose_modulus(a, compose_modulus(b, c))
            chained = Compose(a, Compose(Compose(b, Compose(c, b)), a))
            assert pointwise_equal(left, chained)


class TestSerialization:
    """Reading and writing moduli as s-expressions."""

    @pytest.mark.parametrize(
        "text",
        ["id", "(const 5/2)", "(scale 1/2 id)", "(min id (const 1))", "(compose (std 2) id)", "(clamp 1 id)", "(std 3)"],
    )
    def test_reads_back(self, text):
        """Printing a parsed modulus gives the input text."""
        assert parse_modulus(text).to_sexpr() == text

    def test_nested_min_flattened(self):
        """Nested minima are flattened."""
        d = parse_modulus("(min id (min (std 2) (const 3)))")
        assert isinstance(d, Min)
        assert len(d.children) == 3

    @pytest.mark.parametrize("text", ["idd", "(scale 1/2)", "(const 0)", "(std 1/2)", "(min)", "(frob id)"])
    def test_malformed(self, text):
        """Malformed moduli raise a parse error."""
        with pytest.raises(ParseError):
            parse_modulus(text)


def two_point_map(dom_d, gauges, img_d, img_gauges):
    dd = np.array([[F(0), F(dom_d)], [F(dom_d), F(0)]], dtype=object)
    idist = np.array([[F(0), F(img_d)], [F(img_d), F(0)]], dtype=object)
    return FiniteMap(
        dd,
        np.array([F(g) for g in gauges], dtype=object),
        idist,
        np.array([F(g) for g in img_gauges], dtype=object),
    )


class TestRespectsCheck:
    """The closed-form respects check on finite maps."""

    def test_identity_map(self, line_structure):
        """The identity map respects the identity modulus."""
        M = line_structure
        table = FiniteMap.from_function(M.dist, M.gauge, 1, lambda t: t[0], M.points)
        assert respects_check(table, IDENTITY).passed

    def test_named_constant(self, line_structure):
        """A constant map respects the modulus bounded by 1/nu of its value."""
        M = line_structure
        a = 3  # the point (2, 1), gauge 2
        delta = Min.of(IDENTITY, Constant(1 / M.gauge[a]))
        table = FiniteMap.from_function(M.dist, M.gauge, 1, lambda t: a, M.points)
        assert respects_check(table, delta).passed

    def test_stretching_map_fails(self):
        """A map that separates identical points fails the distance clause."""
        report = respects_check(two_point_map(0, [0, 0], 1, [0, 0]), IDENTITY)
        assert not report.passed
        v = report.first("distance-clause")
        assert v is not None
        assert 0 < v.epsilon < 1

    def test_gauge_clause(self):
        """A far image fails the gauge clause."""
        # nu(f x) = 4 but delta = id lets eps run up to 1
        report = respects_check(two_point_map(0, [1, 1], 0, [4, 4]), IDENTITY)
        assert report.first("gauge-clause") is not None

    def test_limit_stops_early(self):
        """The violation limit stops the search."""
        report = respects_check(two_point_map(0, [0, 0], 1, [0, 0]), IDENTITY, limit=1)
        assert len(report.violations) == 1

    def test_malformed_table(self):
        """An asymmetric distance table is rejected."""
        with pytest.raises(ModulusError, match="symmetric"):
            FiniteMap(
                np.array([[F(0), F(1)], [F(2), F(0)]], dtype=object),
                np.array([F(0), F(0)], dtype=object),
                np.zeros((2, 2), dtype=object),
                np.array([F(0), F(0)], dtype=object),
            )

    def test_pass_survives_identity_truncation(self, rng):
        """Truncating at the identity keeps a pass when the supremum is unchanged."""
        for _ in range(100):
            table = random_finite_map(rng)
            d = random_modulus(rng)
            truncated = normalize(d)
            if respects_check(table, d).passed and sup_modulus(truncated) == sup_modulus(d):
                assert respects_check(table, truncated).passed

    def test_grid_agrees_with_closed_form(self, rng):
        """The closed form and the grid criterion agree on random tables."""
        for _ in range(200):
            table = random_finite_map(rng)
            d = random_modulus(rng)
            closed = respects_check(table, d, limit=None)
            grid = respects_check_grid(table, d)
            assert closed.passed == grid.passed, d.to_sexpr()
