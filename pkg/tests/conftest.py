"""
Shared fixtures for the gaugex test-suite.
"""

from fractions import Fraction

import numpy as np
import pytest

from gaugex.runner.corpus import structure_from_vectors


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def line_structure():
    """Origin and the antipodal pairs +-(1, 0), +-(2, 1) in (Q^2, linf)."""
    return structure_from_vectors([(Fraction(1), Fraction(0)), (Fraction(2), Fraction(1))])


@pytest.fixture
def origin_structure():
    """The one-point corpus structure."""
    return structure_from_vectors([])


def frac_array(rows):
    """Object array of Fractions from nested lists of ints or strings."""
    arr = np.array(rows, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = Fraction(v)
    return out


@pytest.fixture
def frac():
    return frac_array
