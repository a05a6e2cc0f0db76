"""
Plain-text basis and matrix files.

One row per line, entries separated by whitespace, each an integer, a
decimal or a fraction ``p/q``; ``#`` starts a comment. A basis file lists
one vector per row; a matrix file lists the rows of the map.
"""

import io
import logging
from fractions import Fraction
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from gaugex.core.errors import ParseError
from gaugex.core.extended import format_value

logger = logging.getLogger(__name__)


def parse_rows(text: str) -> np.ndarray:
    """Object array of Fractions, shape ``(rows, cols)``.

    Raises
    ------
    ParseError
        Empty input, ragged rows or an entry that is not a rational.
    """
    try:
        frame = pd.read_csv(io.StringIO(text), sep=r"\s+", comment="#", header=None, dtype=str)
    except pd.errors.EmptyDataError:
        raise ParseError("no rows found", 0) from None
    except pd.errors.ParserError as exc:
        raise ParseError(f"rows have different lengths: {exc}", 0) from None
    if frame.isna().to_numpy().any():
        raise ParseError("rows have different lengths", 0)
    out = np.empty(frame.shape, dtype=object)
    for (i, j), entry in np.ndenumerate(frame.to_numpy()):
        try:
            out[i, j] = Fraction(entry)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"row {i + 1}, column {j + 1}: '{entry}' is not a rational", 0) from None
    return out


def load_rows(path: Union[str, Path]) -> np.ndarray:
    path = Path(path).expanduser()
    if not path.exists():
        raise FileNotFoundError(f"Matrix file not found: {path}")
    rows = parse_rows(path.read_text())
    logger.debug("read %dx%d rows from %s", rows.shape[0], rows.shape[1], path)
    return rows


def dump_rows(rows) -> str:
    rows = np.atleast_2d(np.asarray(rows, dtype=object))
    return "".join(" ".join(format_value(Fraction(x)) for x in row) + "\n" for row in rows)


def save_rows(rows, path: Union[str, Path]) -> Path:
    path = Path(path).expanduser()
    path.write_text(dump_rows(rows))
    return path
