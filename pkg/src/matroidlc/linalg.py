"""Dense exact matrices: linear maps and symmetric matrices over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ArityMismatch, NotSymmetric


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class LinearMap:
    """An ``rows x cols`` matrix mapping column vectors of length ``cols``."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        self.entries: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(_frac(x) for x in row) for row in entries
        )
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        if any(len(r) != cols for r in self.entries):
            raise ArityMismatch("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "LinearMap":
        return cls([[0] * cols for _ in range(rows)], cols)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.cols != other.rows:
            raise ArityMismatch(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        cols_of_other = list(zip(*other.entries)) if other.rows else [() for _ in range(other.cols)]
        return LinearMap(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols_of_other] for row in self.entries],
            other.cols,
        )

    def apply(self, x: Sequence) -> tuple[Fraction, ...]:
        if len(x) != self.cols:
            raise ArityMismatch(f"vector of length {len(x)} for {self.cols} columns")
        x = [_frac(v) for v in x]
        return tuple(sum((a * b for a, b in zip(row, x) if a), Fraction(0)) for row in self.entries)

    def transpose(self) -> "LinearMap":
        return LinearMap([list(col) for col in zip(*self.entries)] if self.rows else [], self.rows)

    def row_terms(self, i: int) -> dict[int, Fraction]:
        return {j: a for j, a in enumerate(self.entries[i]) if a}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self) -> str:
        return f"LinearMap({self.rows}x{self.cols})"


class SymMatrix:
    """Symmetric matrix with exact rational entries."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(_frac(x) for x in row) for row in entries)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise NotSymmetric("matrix is not square")
            for j in range(i):
                if row[j] != rows[j][i]:
                    raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
        self.entries = rows

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entries[ij[0]][ij[1]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        return SymMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        return SymMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def scale(self, c) -> "SymMatrix":
        c = _frac(c)
        return SymMatrix([[c * a for a in r] for r in self.entries])

    def matvec(self, x: Sequence) -> tuple[Fraction, ...]:
        x = [_frac(v) for v in x]
        return tuple(sum((a * b for a, b in zip(r, x) if a), Fraction(0)) for r in self.entries)

    def quadratic_form(self, x: Sequence, y: Sequence | None = None) -> Fraction:
        y = x if y is None else y
        return sum((_frac(a) * b for a, b in zip(x, self.matvec(y))), Fraction(0))

    def congruence(self, P: LinearMap) -> "SymMatrix":
        """``Pᵀ A P``."""
        if P.rows != self.dim:
            raise ArityMismatch("congruence by a map of the wrong height")
        A = LinearMap(self.entries, self.dim)
        return SymMatrix((P.transpose() @ A @ P).entries)

    def outer_downdate(self, v: Sequence) -> "SymMatrix":
        """``A - v vᵀ``."""
        v = [_frac(x) for x in v]
        return SymMatrix([[a - v[i] * v[j] for j, a in enumerate(r)] for i, r in enumerate(self.entries)])

    def principal(self, idx: Sequence[int]) -> "SymMatrix":
        return SymMatrix([[self.entries[i][j] for j in idx] for i in idx])

    def to_float(self):
        import numpy as np

        return np.array([[float(a) for a in r] for r in self.entries], dtype=float)

    def inf_norm(self) -> Fraction:
        return max((sum(abs(a) for a in r) for r in self.entries), default=Fraction(0))

    def __repr__(self) -> str:
        return f"SymMatrix({[[str(a) for a in r] for r in self.entries]})"


def diagonal(values: Sequence) -> SymMatrix:
    n = len(values)
    return SymMatrix([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])
