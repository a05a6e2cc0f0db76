"""
Nonnegative rationals extended with a formal infinity.

Values are plain :class:`fractions.Fraction` instances or the singleton
:data:`INF`. ``INF`` compares above every Fraction, so ``min``/``max`` and
sorting work on mixed collections.
"""

from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Union


@total_ordering
class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("gaugex.INF")

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __mul__(self, other):
        if other is self:
            return self
        if Fraction(other) == 0:
            raise ArithmeticError("0 * inf is undefined")
        return self

    __rmul__ = __mul__

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ExtendedValue = Union[Fraction, _Infinity]


def is_inf(value) -> bool:
    return value is INF


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"cannot read {value!r} as an exact rational")


def reciprocal(value: ExtendedValue) -> ExtendedValue:
    """1/v with 1/0 = INF and 1/INF = 0."""
    if value is INF:
        return Fraction(0)
    if value == 0:
        return INF
    return 1 / value


def format_value(value: ExtendedValue) -> str:
    """Render as ``"p/q"`` (or ``"p"`` for integers, ``"inf"``)."""
    if value is INF:
        return "inf"
    value = as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_value(text: str) -> ExtendedValue:
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    return Fraction(text.strip())


def monus(a: Fraction, b: Fraction) -> Fraction:
    """Truncated subtraction ``max(a - b, 0)``."""
    diff = a - b
    return diff if diff > 0 else Fraction(0)
