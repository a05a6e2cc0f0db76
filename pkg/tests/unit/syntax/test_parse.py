"""
Tests for signatures and the formula reader.
"""

from fractions import Fraction

import pytest

from gaugex.core.errors import ArityError, ParseError, SignatureError, UnknownSymbolError
from gaugex.core.modulus import IDENTITY, Min, Scale, StandardArity
from gaugex.syntax.formula import ONE, App, Atomic, Half, Sup, Var, formula_to_sexpr
from gaugex.syntax.parse import parse_formula, parse_signature, parse_term
from gaugex.syntax.signature import (
    FUN,
    PRED,
    Signature,
    Symbol,
    banach_signature,
    constant_modulus,
    graph_signature,
    name_constants,
)

SIG_TEXT = """
; test signature
(pred P 1 id)
(pred Q 2 (std 2))
(fun neg 1 id)
(fun o 0 id)
"""


@pytest.fixture
def sig():
    return parse_signature(SIG_TEXT)


class TestSignature:
    """Signatures and their text form."""

    def test_distinguished_symbols_added(self, sig):
        """Distance and gauge are always present."""
        assert sig.predicate("d").modulus == StandardArity(2)
        assert sig.predicate("nu").modulus == IDENTITY
        assert [s.name for s in sig.user_predicates()] == ["P", "Q"]
        assert not sig.is_relational
        assert [c.name for c in sig.constants()] == ["o"]

    def test_round_trip_through_text(self, sig):
        """A signature reads back from its own text."""
        assert parse_signature(sig.to_sexpr()) == sig

    def test_duplicate(self):
        """Symbol names are unique."""
        with pytest.raises(SignatureError, match="duplicate"):
            Signature([Symbol("P", 1, IDENTITY), Symbol("P", 2, IDENTITY)])

    def test_reserved(self):
        """Keywords and distinguished names cannot be declared."""
        with pytest.raises(SignatureError):
            Signature([Symbol("sup", 1, IDENTITY)])
        with pytest.raises(SignatureError):
            Signature([Symbol("d", 1, IDENTITY)])

    def test_bad_declaration(self):
        """Declarations need a kind, name, arity and modulus."""
        with pytest.raises(ParseError):
            parse_signature("(pred P 1)")
        with pytest.raises(ParseError):
            parse_signature("(rel P 1 id)")

    def test_constant_modulus(self):
        """Constants get a scaled identity modulus."""
        assert constant_modulus(0) == IDENTITY
        assert constant_modulus(4)(1) == Fraction(1, 4)

    def test_name_constants(self, sig):
        """Naming points adds constants with gauge-scaled moduli."""
        named = name_constants(sig, {"a": 2})
        assert named.function("a").arity == 0
        assert named.function("a").modulus(1) == Fraction(1, 2)
        with pytest.raises(SignatureError):
            name_constants(sig, {"P": 1})

    def test_banach_signature(self):
        """The normed space signature has the expected moduli."""
        sig = banach_signature()
        assert sig.function("plus").modulus == StandardArity(2)
        assert sig.function("scale_2").modulus == Scale(Fraction(1, 2), IDENTITY)
        assert sig.function("scale_-1").modulus == IDENTITY

    def test_graph_signature(self, sig):
        """Functions become graph predicates with their schemes."""
        rel, schemes = graph_signature(sig)
        assert rel.is_relational
        assert rel.predicate("G_neg").arity == 2
        assert rel.predicate("G_o").arity == 1
        assert len(schemes) == 8

    def test_graph_signature_relational_unchanged(self):
        """Relational signatures pass through."""
        sig = Signature([Symbol("P", 1, IDENTITY, PRED)])
        assert graph_signature(sig) == (sig, [])


class TestParseFormula:
    """Reading formulas and terms."""

    def test_quantified(self, sig):
        """Quantifiers and nested terms parse."""
        phi = parse_formula("(sup x (sub (const 1) (Q x (neg y))))", sig)
        assert isinstance(phi, Sup)
        assert phi.body.right == Atomic("Q", (Var("x"), App("neg", (Var("y"),))))

    def test_constants(self, sig):
        """Dyadic constants and constant symbols parse."""
        assert parse_formula("(const 1)", sig) is ONE
        half = parse_formula("(const 1/2)", sig)
        assert isinstance(half, Half)
        assert parse_formula("(P o)", sig).args == (App("o", ()),)

    def test_round_trip(self, sig):
        """Printing a parsed formula gives back the text."""
        text = "(inf x (add (half (P x)) (sub (d x y) (nu x))))"
        assert formula_to_sexpr(parse_formula(text, sig)) == text

    def test_term(self, sig):
        """Terms parse on their own."""
        assert parse_term("(neg (neg x))", sig) == App("neg", (App("neg", (Var("x"),)),))

    @pytest.mark.parametrize(
        "text,error",
        [
            ("(R x)", UnknownSymbolError),
            ("(P x y)", ArityError),
            ("(P (f x))", UnknownSymbolError),
            ("(const 1/3)", ParseError),
            ("(sup 1 (P x))", ParseError),
            ("(P P)", ParseError),
            ("(half)", ArityError),
            ("(neg x)", UnknownSymbolError),
            ("(P (neg))", ArityError),
            ("x", ParseError),
        ],
    )
    def test_errors(self, sig, text, error):
        """Each kind of bad input raises its own error."""
        with pytest.raises(error):
            parse_formula(text, sig)

    def test_error_offset(self, sig):
        """Errors point at the offending offset."""
        with pytest.raises(ParseError) as err:
            parse_formula("(add (P x)\n  (sup 2 (P x)))", sig)
        assert err.value.position == 18

    def test_symbols_kinds(self):
        """Symbols print with their kind and modulus."""
        sym = Symbol("f", 2, Min.of(IDENTITY, StandardArity(2)), FUN)
        assert sym.to_sexpr() == "(fun f 2 (min id (std 2)))"
