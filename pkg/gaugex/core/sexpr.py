"""
Minimal s-expression reader and printer.

Atoms are returned as :class:`Symbol` (a ``str`` carrying its source
offset), lists as :class:`SList`. Numbers are left as symbols and
converted where the grammar expects them, so ``1/2`` and ``-3`` read
as ordinary atoms. ``;`` starts a comment running to end of line.
"""

from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from gaugex.core.errors import ParseError

# token kinds
T_OPEN, T_CLOSE, T_ATOM = range(3)

_DELIMS = " \t\r\n;()"


class Symbol(str):
    """Atom with the offset it was read from."""

    position: Optional[int] = None

    def __new__(cls, text: str, position: Optional[int] = None):
        obj = super().__new__(cls, text)
        obj.position = position
        return obj


class SList(list):
    """List node with the offset of its opening parenthesis."""

    position: Optional[int] = None

    def __init__(self, items=(), position: Optional[int] = None):
        super().__init__(items)
        self.position = position


Sexpr = Union[Symbol, SList]


def tokenize(text: str) -> Iterator[Tuple[int, str, int]]:
    """Yield ``(kind, text, offset)`` triples."""
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c == "(":
            yield T_OPEN, c, i
            i += 1
        elif c == ")":
            yield T_CLOSE, c, i
            i += 1
        else:
            start = i
            while i < n and text[i] not in _DELIMS:
                i += 1
            yield T_ATOM, text[start:i], start


def read_all(text: str) -> List[Sexpr]:
    """Read every top-level expression in ``text``."""
    stack: List[SList] = []
    out: List[Sexpr] = []
    for kind, tok, pos in tokenize(text):
        if kind == T_OPEN:
            stack.append(SList(position=pos))
        elif kind == T_CLOSE:
            if not stack:
                raise ParseError("unbalanced ')'", pos)
            done = stack.pop()
            (stack[-1] if stack else out).append(done)
        else:
            (stack[-1] if stack else out).append(Symbol(tok, pos))
    if stack:
        raise ParseError("unexpected end of input, missing ')'", stack[-1].position)
    return out


def read_one(text: str) -> Sexpr:
    """Read exactly one expression."""
    items = read_all(text)
    if not items:
        raise ParseError("empty input", 0)
    if len(items) > 1:
        extra = items[1]
        raise ParseError("trailing input after expression", getattr(extra, "position", None))
    return items[0]


def position_of(node) -> Optional[int]:
    return getattr(node, "position", None)


def is_atom(node) -> bool:
    return isinstance(node, str)


def expect_list(node, what: str, min_len: int = 0) -> SList:
    if is_atom(node):
        raise ParseError(f"expected a list for {what}, got atom '{node}'", position_of(node))
    if len(node) < min_len:
        raise ParseError(f"{what} needs at least {min_len} elements", position_of(node))
    return node


def expect_atom(node, what: str) -> str:
    if not is_atom(node):
        raise ParseError(f"expected an atom for {what}", position_of(node))
    return str(node)


def head_of(node) -> Optional[str]:
    """Head symbol of a list node, or None."""
    if is_atom(node) or not node or not is_atom(node[0]):
        return None
    return str(node[0])


def rational_atom(node, what: str = "rational") -> Fraction:
    """Read an atom such as ``3``, ``-1/2`` or ``0.25`` as an exact Fraction."""
    text = expect_atom(node, what)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"invalid {what} '{text}'", position_of(node)) from None


def natural_atom(node, what: str = "natural number") -> int:
    value = rational_atom(node, what)
    if value.denominator != 1 or value < 0:
        raise ParseError(f"{what} must be a natural number, got '{node}'", position_of(node))
    return int(value)


def dumps(node) -> str:
    """Print nested lists/atoms back to text."""
    if isinstance(node, (list, tuple)):
        return "(" + " ".join(dumps(x) for x in node) + ")"
    if isinstance(node, Fraction):
        if node.denominator == 1:
            return str(node.numerator)
        return f"{node.numerator}/{node.denominator}"
    return str(node)


def dumps_lines(nodes: Sequence) -> str:
    return "\n".join(dumps(n) for n in nodes) + ("\n" if nodes else "")
