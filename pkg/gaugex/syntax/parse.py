"""
Reading formulas, terms and signatures from s-expressions.

Grammar::

    formula := (P t ...) | (const q) | (half F) | (add F F) | (sub F F)
             | (sup x F) | (inf x F) | (nu t) | (d t t)
    term    := variable | c | (f t ...)

``(const q)`` accepts any dyadic rational and expands to the corresponding
tree of 1, + and /2. A bare atom naming a zero-ary function symbol is that
constant; every other bare atom is a variable.
"""

from fractions import Fraction

from gaugex.core.errors import ArityError, ParseError, UnknownSymbolError
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
    read_one,
)
from gaugex.syntax.formula import (
    ONE,
    RESERVED,
    Add,
    App,
    Atomic,
    Formula,
    Half,
    Sub,
    Term,
    Var,
    as_dyadic,
    dyadic_const,
    quantifier,
)
from gaugex.syntax.signature import FUN, PRED, Signature, Symbol


def _check_variable(node) -> str:
    name = expect_atom(node, "variable")
    if name in RESERVED or name[0] in "-0123456789./":
        raise ParseError(f"'{name}' cannot be used as a variable name", position_of(node))
    return name


def term_from_sexpr(node, sig: Signature) -> Term:
    if is_atom(node):
        name = str(node)
        fn = sig.function(name)
        if fn is not None:
            if fn.arity != 0:
                raise ArityError(f"function '{name}' expects {fn.arity} arguments, got 0")
            return App(name, ())
        if sig.predicate(name) is not None:
            raise ParseError(f"predicate '{name}' used as a term", position_of(node))
        return Var(_check_variable(node))
    head = head_of(node)
    if head is None:
        raise ParseError("term must start with a function symbol", position_of(node))
    fn = sig.function(head)
    if fn is None:
        raise UnknownSymbolError(f"unknown function symbol '{head}' at offset {position_of(node)}")
    args = node[1:]
    if len(args) != fn.arity:
        raise ArityError(
            f"function '{head}' expects {fn.arity} arguments, got {len(args)} (offset {position_of(node)})"
        )
    return App(head, tuple(term_from_sexpr(a, sig) for a in args))


def formula_from_sexpr(node, sig: Signature) -> Formula:
    node = expect_list(node, "formula", 1)
    head = head_of(node)
    if head is None:
        raise ParseError("formula must start with a symbol", position_of(node))
    args = node[1:]
    pos = position_of(node)

    def need(n: int):
        if len(args) != n:
            raise ArityError(f"'{head}' expects {n} arguments, got {len(args)} (offset {pos})")

    if head == "const":
        need(1)
        value = rational_atom(args[0], "constant")
        if value == 1:
            return ONE
        try:
            return dyadic_const(*as_dyadic(value))
        except ValueError as exc:
            raise ParseError(str(exc), position_of(args[0])) from None
    if head == "half":
        need(1)
        return Half(formula_from_sexpr(args[0], sig))
    if head in ("add", "sub"):
        need(2)
        cls = Add if head == "add" else Sub
        return cls(formula_from_sexpr(args[0], sig), formula_from_sexpr(args[1], sig))
    if head in ("sup", "inf"):
        need(2)
        return quantifier(head, _check_variable(args[0]), formula_from_sexpr(args[1], sig))
    pred = sig.predicate(head)
    if pred is None:
        raise UnknownSymbolError(f"unknown predicate symbol '{head}' at offset {pos}")
    need(pred.arity)
    return Atomic(head, tuple(term_from_sexpr(a, sig) for a in args))


def parse_formula(text: str, sig: Signature) -> Formula:
    """Parse one formula; symbols are checked against ``sig``."""
    return formula_from_sexpr(read_one(text), sig)


def parse_term(text: str, sig: Signature) -> Term:
    return term_from_sexpr(read_one(text), sig)


def symbol_from_sexpr(node) -> Symbol:
    node = expect_list(node, "symbol declaration")
    kind = head_of(node)
    if kind not in (PRED, FUN) or len(node) != 4:
        raise ParseError("expected (pred NAME ARITY MODULUS) or (fun NAME ARITY MODULUS)", position_of(node))
    name = expect_atom(node[1], "symbol name")
    arity = natural_atom(node[2], "arity")
    return Symbol(name, arity, modulus_from_sexpr(node[3]), kind)


def signature_from_sexprs(nodes) -> Signature:
    return Signature([symbol_from_sexpr(n) for n in nodes])


def parse_signature(text: str) -> Signature:
    """Read a signature file: a sequence of ``(pred ...)`` / ``(fun ...)`` forms."""
    return signature_from_sexprs(read_all(text))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"invalid rational '{text}'") from None
