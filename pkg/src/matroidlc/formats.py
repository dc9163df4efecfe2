"""Reading and writing the text formats used by the command line."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, TextIO

from .errors import InvalidParameters
from .graphs import Graph
from .linalg import SymMatrix
from .matroid import Matroid, validate_flats
from .polyalg import MultiPoly
from .unipoly import format_rational


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParameters(f"bad rational {text!r}") from exc


def load_matroid(text: str, max_flats: int | None = None) -> Matroid:
    """``{"ground": n, "flats": [[...], ...]}``"""
    try:
        data = json.loads(text)
        ground = int(data["ground"])
        flats = [[int(e) for e in f] for f in data["flats"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise InvalidParameters(f"malformed matroid file: {exc}") from exc
    if len({tuple(sorted(f)) for f in flats}) != len(flats):
        raise InvalidParameters("flats are not distinct")
    return validate_flats(flats, ground, max_flats=max_flats)


def dump_matroid(M: Matroid) -> str:
    return json.dumps(M.to_dict(), sort_keys=True)


def load_graph(text: str) -> Graph:
    """First line ``V E``, then ``E`` lines ``tail head``."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    try:
        v, e = (int(x) for x in lines[0])
        edges = tuple((int(a), int(b)) for a, b in lines[1:])
    except (ValueError, IndexError) as exc:
        raise InvalidParameters(f"malformed edge list: {exc}") from exc
    if len(edges) != e:
        raise InvalidParameters(f"header promises {e} edges, found {len(edges)}")
    return Graph(v, edges)


def dump_graph(G: Graph) -> str:
    return "\n".join([f"{G.vertex_count} {G.edge_count}"] + [f"{a} {b}" for a, b in G.edges]) + "\n"


def load_ffmatrix(text: str) -> tuple[int, list[list[int]]]:
    """First line ``p r+1 n+1``, then ``n+1`` rows of ``r+1`` residues."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        p, cols, rows = (int(x) for x in lines[0])
        matrix = [[int(x) for x in ln] for ln in lines[1:]]
    except (ValueError, IndexError) as exc:
        raise InvalidParameters(f"malformed arrangement: {exc}") from exc
    if len(matrix) != rows or any(len(r) != cols for r in matrix):
        raise InvalidParameters("arrangement shape does not match its header")
    return p, matrix


def load_symmatrix(text: str) -> SymMatrix:
    """One row per line, rationals separated by whitespace."""
    rows = [[parse_rational(x) for x in ln.split()] for ln in text.splitlines() if ln.strip()]
    return SymMatrix(rows)


def poly_records(f: MultiPoly) -> list:
    return [[exps, num, den] for exps, num, den in f.to_records()]


def load_poly(text: str) -> MultiPoly:
    data = json.loads(text)
    return MultiPoly.from_records(int(data["arity"]), data["terms"])


def dump_poly(f: MultiPoly) -> str:
    return json.dumps({"arity": f.arity, "terms": poly_records(f)}, sort_keys=True)


def class_vector_pairs(pairs: Iterable[tuple[int, Fraction]]) -> list:
    return [[fid, format_rational(c)] for fid, c in pairs]


def set_function_values(values: Iterable[Fraction]) -> list[str]:
    return [format_rational(v) for v in values]


def read_source(path: str, stream: TextIO | None = None) -> str:
    if path == "-":
        import sys

        return (stream or sys.stdin).read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()
