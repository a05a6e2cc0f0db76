"""
gaugex.io.structure_file
------------------------
Reading and writing finite structures as s-expressions.

File format (top-level forms, in any order)::

    (signature (pred P 1 id) (fun f 1 id))   ; optional
    (points a b c)
    (dist a b 1/2)                            ; symmetric closure applied
    (gauge a 0)
    (pred P a 3/4)
    (fun f a b)                               ; f(a) = b

The diagonal of ``dist`` defaults to 0; every other entry must be given.
An optional ``(structure ...)`` wrapper around the forms is accepted.
"""

from __future__ import annotations

import itertools
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from gaugex.core.errors import ParseError, StructureError
from gaugex.core.extended import format_value
from gaugex.core.sexpr import (
    expect_atom,
    expect_list,
    head_of,
    position_of,
    rational_atom,
    read_all,
)
from gaugex.structure.gauged import GaugedStructure
from gaugex.syntax.parse import parse_signature, signature_from_sexprs
from gaugex.syntax.signature import Signature

logger = logging.getLogger(__name__)

__all__ = [
    "parse_structure",
    "load_structure",
    "dump_structure",
    "save_structure",
    "load_signature",
]


# ---------------------------------------------------------------------------
# reading
# ---------------------------------------------------------------------------


def _point(node, index: Dict[str, int]) -> int:
    name = expect_atom(node, "point")
    if name not in index:
        raise StructureError(f"unknown point '{name}' at offset {position_of(node)}")
    return index[name]


def parse_structure(text: str, sig: Optional[Signature] = None) -> GaugedStructure:
    """Build a structure from file text.

    An inline ``(signature ...)`` block takes precedence over ``sig``.
    """
    forms = read_all(text)
    if len(forms) == 1 and head_of(forms[0]) == "structure":
        forms = list(forms[0][1:])
    inline = [f for f in forms if head_of(f) == "signature"]
    if len(inline) > 1:
        raise ParseError("more than one signature block", position_of(inline[1]))
    if inline:
        sig = signature_from_sexprs(inline[0][1:])
    if sig is None:
        raise StructureError("structure file has no signature and none was supplied")

    point_forms = [f for f in forms if head_of(f) == "points"]
    if len(point_forms) != 1:
        raise StructureError("structure file needs exactly one (points ...) form")
    points = [expect_atom(p, "point") for p in point_forms[0][1:]]
    index = {p: i for i, p in enumerate(points)}
    n = len(points)

    dist: Dict[Tuple[int, int], object] = {(i, i): 0 for i in range(n)}
    gauge: Dict[int, object] = {}
    preds: Dict[str, Dict[Tuple[int, ...], object]] = {s.name: {} for s in sig.user_predicates()}
    funs: Dict[str, Dict[Tuple[int, ...], int]] = {name: {} for name in sig.functions}

    for form in forms:
        head = head_of(form)
        if head in ("signature", "points"):
            continue
        form = expect_list(form, "structure entry", 2)
        pos = position_of(form)
        if head == "dist":
            if len(form) != 4:
                raise ParseError("expected (dist a b q)", pos)
            i, j = _point(form[1], index), _point(form[2], index)
            q = rational_atom(form[3], "distance")
            for key in ((i, j), (j, i)):
                if key in dist and dist[key] != q and i != j:
                    raise StructureError(f"conflicting distances for {points[i]}, {points[j]}")
                dist[key] = q
        elif head == "gauge":
            if len(form) != 3:
                raise ParseError("expected (gauge a q)", pos)
            gauge[_point(form[1], index)] = rational_atom(form[2], "gauge")
        elif head == "pred":
            name = expect_atom(form[1], "predicate")
            if name not in preds:
                raise StructureError(f"unknown predicate '{name}' at offset {pos}")
            arity = sig.predicate(name).arity
            if len(form) != arity + 3:
                raise ParseError(f"predicate '{name}' entry needs {arity} points and a value", pos)
            args = tuple(_point(a, index) for a in form[2 : 2 + arity])
            preds[name][args] = rational_atom(form[-1], "predicate value")
        elif head == "fun":
            name = expect_atom(form[1], "function")
            if name not in funs:
                raise StructureError(f"unknown function '{name}' at offset {pos}")
            arity = sig.function(name).arity
            if len(form) != arity + 3:
                raise ParseError(f"function '{name}' entry needs {arity} points and an image", pos)
            args = tuple(_point(a, index) for a in form[2 : 2 + arity])
            funs[name][args] = _point(form[-1], index)
        else:
            raise ParseError(f"unknown structure form '{head}'", pos)

    def total(table, shape, what):
        out = np.empty(shape, dtype=object)
        for idx in itertools.product(*(range(s) for s in shape)):
            if idx not in table:
                names = " ".join(points[i] for i in idx)
                raise StructureError(f"missing {what} entry for ({names})")
            out[idx] = table[idx]
        return out

    d = total(dist, (n, n), "dist")
    g = total({(i,): v for i, v in gauge.items()}, (n,), "gauge")
    pred_tables = {
        name: total(table, (n,) * sig.predicate(name).arity, f"pred {name}")
        for name, table in preds.items()
    }
    fun_tables = {
        name: total(table, (n,) * sig.function(name).arity, f"fun {name}").astype(np.int64)
        for name, table in funs.items()
    }
    return GaugedStructure(sig, points, d, g, pred_tables, fun_tables)


def load_structure(path: Union[str, Path], sig: Optional[Signature] = None) -> GaugedStructure:
    path = Path(path).expanduser()
    if not path.exists():
        raise FileNotFoundError(f"Structure file not found: {path}")
    M = parse_structure(path.read_text(), sig)
    logger.info("loaded %d-point structure from %s", M.size, path)
    return M


def load_signature(path: Union[str, Path]) -> Signature:
    path = Path(path).expanduser()
    if not path.exists():
        raise FileNotFoundError(f"Signature file not found: {path}")
    return parse_signature(path.read_text())


# ---------------------------------------------------------------------------
# writing
# ---------------------------------------------------------------------------


def dump_structure(M: GaugedStructure, include_signature: bool = True) -> str:
    """Text form readable by :func:`parse_structure`."""
    P = M.points
    lines: List[str] = []
    if include_signature:
        body = M.signature.to_sexpr().replace("\n", "\n  ")
        lines.append(f"(signature\n  {body})")
    lines.append("(points " + " ".join(P) + ")")
    for i, j in itertools.combinations(range(M.size), 2):
        lines.append(f"(dist {P[i]} {P[j]} {format_value(M.dist[i, j])})")
    for i in range(M.size):
        lines.append(f"(gauge {P[i]} {format_value(M.gauge[i])})")
    for name, table in M.predicates.items():
        for idx in itertools.product(range(M.size), repeat=table.ndim):
            args = " ".join(P[i] for i in idx)
            lines.append(f"(pred {name}{' ' if args else ''}{args} {format_value(table[idx])})")
    for name, table in M.functions.items():
        for idx in itertools.product(range(M.size), repeat=table.ndim):
            args = " ".join(P[i] for i in idx)
            lines.append(f"(fun {name}{' ' if args else ''}{args} {P[int(table[idx])]})")
    return "\n".join(lines) + "\n"


def save_structure(M: GaugedStructure, path: Union[str, Path], include_signature: bool = True) -> Path:
    path = Path(path).expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_structure(M, include_signature))
    logger.info("wrote %d-point structure to %s", M.size, path)
    return path
