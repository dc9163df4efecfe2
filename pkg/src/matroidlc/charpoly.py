"""Incidence algebra, Möbius invariants and characteristic polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Mapping, Sequence

from .errors import (
    BudgetExceeded,
    InternalMismatch,
    InvalidParameters,
    NotDivisible,
    NotInvertible,
    NotPrime,
)
from .graphs import Graph, chromatic_polynomial, component_count, graphic_matroid
from .matroid import Matroid, mask_of, validate_flats
from .unipoly import UniPoly, is_real_rooted

FF_BUDGET = 10**6


@dataclass(frozen=True)
class IncidenceElement:
    """Sparse formal sum of intervals [F, G] of a lattice of flats."""

    lattice: Matroid
    coeffs: Mapping[tuple[int, int], Fraction]

    def __mul__(self, other: "IncidenceElement") -> "IncidenceElement":
        return incidence_multiply(self, other)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.coeffs.get(key, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IncidenceElement):
            return NotImplemented
        nz = lambda d: {k: v for k, v in d.items() if v}
        return self.lattice == other.lattice and nz(self.coeffs) == nz(other.coeffs)


def _element(M: Matroid, coeffs: dict) -> IncidenceElement:
    for a, b in coeffs:
        if not M.leq(a, b):
            raise InvalidParameters(f"[{a}, {b}] is not an interval")
    return IncidenceElement(M, {k: Fraction(v) for k, v in coeffs.items() if v})


def delta(M: Matroid) -> IncidenceElement:
    return _element(M, {(x, x): 1 for x in range(len(M))})


def zeta(M: Matroid) -> IncidenceElement:
    n = len(M)
    return _element(M, {(x, y): 1 for x in range(n) for y in range(x, n) if M.leq(x, y)})


def incidence_multiply(a: IncidenceElement, b: IncidenceElement) -> IncidenceElement:
    if a.lattice != b.lattice:
        raise InvalidParameters("elements live in different incidence algebras")
    by_start: dict[int, list[tuple[int, Fraction]]] = {}
    for (x, y), v in b.coeffs.items():
        by_start.setdefault(x, []).append((y, v))
    out: dict[tuple[int, int], Fraction] = {}
    for (u, v), c in a.coeffs.items():
        for y, d in by_start.get(v, ()):
            out[(u, y)] = out.get((u, y), 0) + c * d
    return IncidenceElement(a.lattice, {k: v for k, v in out.items() if v})


def incidence_invert(a: IncidenceElement) -> IncidenceElement:
    """Back-substitution; the canonical flat order is a linear extension of inclusion."""
    M = a.lattice
    n = len(M)
    for x in range(n):
        if not a[(x, x)]:
            raise NotInvertible(f"coefficient of [{x}, {x}] is zero")
    below: dict[int, list[tuple[int, Fraction]]] = {}
    for (z, y), v in a.coeffs.items():
        if z != y:
            below.setdefault(y, []).append((z, v))
    inv: dict[tuple[int, int], Fraction] = {}
    for x in range(n):
        inv[(x, x)] = 1 / a[(x, x)]
        for y in range(x + 1, n):
            if not M.leq(x, y):
                continue
            s = sum((inv.get((x, z), 0) * v for z, v in below.get(y, ())), Fraction(0))
            if s:
                inv[(x, y)] = -s / a[(y, y)]
    return IncidenceElement(M, {k: v for k, v in inv.items() if v})


def mobius_invariants(M: Matroid) -> dict[tuple[int, int], int]:
    """The Möbius function of every interval, as the inverse of zeta."""
    mu = incidence_invert(zeta(M))
    out = {}
    for key, v in mu.coeffs.items():
        if v.denominator != 1:
            raise InternalMismatch(f"non-integral Möbius value {v} on {key}")
        out[key] = int(v)
    return out


@dataclass(frozen=True)
class CharPoly:
    poly: UniPoly
    mu: tuple[int, ...]


@dataclass(frozen=True)
class ReducedCharPoly:
    poly: UniPoly
    mu: tuple[int, ...]


def _magnitudes(p: UniPoly, top: int) -> tuple[int, ...]:
    return tuple((-1) ** i * p[top - i] for i in range(top + 1))


def _charpoly_recursive(M: Matroid) -> UniPoly:
    # chi of each contraction M_F, from the top flat down
    chi: list[UniPoly | None] = [None] * len(M)
    for f in range(M.top, -1, -1):
        acc = UniPoly.monomial(M.rank - M.ranks[f])
        for g in range(f + 1, len(M)):
            if M.leq(f, g):
                acc = acc - chi[g]
        chi[f] = acc
    return chi[M.bottom]


def _charpoly_mobius(M: Matroid, mu: Mapping[tuple[int, int], int]) -> UniPoly:
    coeffs = [0] * (M.rank + 1)
    for f in range(len(M)):
        coeffs[M.rank - M.ranks[f]] += mu.get((M.bottom, f), 0)
    return UniPoly(coeffs)


def characteristic_polynomial(M: Matroid) -> CharPoly:
    if not M.loopless:
        return CharPoly(UniPoly(), (0,) * (M.rank + 1))
    by_recursion = _charpoly_recursive(M)
    by_mobius = _charpoly_mobius(M, mobius_invariants(M))
    if by_recursion != by_mobius:
        raise InternalMismatch(f"{by_recursion} != {by_mobius}")
    return CharPoly(by_recursion, _magnitudes(by_recursion, M.rank))


def reduced_characteristic_polynomial(M: Matroid) -> ReducedCharPoly:
    if M.rank < 1:
        raise NotDivisible("rank 0 has no reduced characteristic polynomial")
    if not M.loopless:
        raise NotDivisible("a matroid with loops has zero characteristic polynomial")
    chi = characteristic_polynomial(M).poly
    red = chi.exact_div(UniPoly([-1, 1]))
    return ReducedCharPoly(red, _magnitudes(red, M.rank - 1))


def chromatic_relation_check(G: Graph) -> bool:
    lhs = chromatic_polynomial(G)
    rhs = UniPoly.monomial(component_count(G)) * characteristic_polynomial(graphic_matroid(G)).poly
    return lhs == rhs


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def arrangement_matroid(rows: Sequence[Sequence[int]], p: int) -> Matroid:
    """Flats are the index sets F where adding any other form cuts H_F further."""
    n = len(rows)
    rank_cache: dict[int, int] = {}

    def rank(mask: int) -> int:
        if mask not in rank_cache:
            rank_cache[mask] = _rank_mod_p([rows[i] for i in range(n) if mask >> i & 1], p)
        return rank_cache[mask]

    def close(mask: int) -> int:
        r = rank(mask)
        return mask | mask_of(j for j in range(n) if rank(mask | 1 << j) == r)

    flats = {close(0)}
    stack = [close(0)]
    while stack:
        f = stack.pop()
        for j in range(n):
            if not f >> j & 1:
                g = close(f | 1 << j)
                if g not in flats:
                    flats.add(g)
                    stack.append(g)
    return validate_flats(flats, n)


def finite_field_count(
    rows: Sequence[Sequence[int]], p: int, b: int = 1, budget: int = FF_BUDGET
) -> tuple[Matroid, int]:
    """Count points of F_{p^b}^{r+1} off every hyperplane of the arrangement.

    The forms have coefficients in F_p, so each form acts on F_{p^b}
    coordinate-wise once F_{p^b} is written as F_p^b.  No field
    multiplication is needed.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if b < 1:
        raise InvalidParameters("b must be positive")
    if not rows:
        raise InvalidParameters("the arrangement needs at least one form")
    dim = len(rows[0])
    if any(len(r) != dim for r in rows):
        raise InvalidParameters("forms have different lengths")
    if any(all(x % p == 0 for x in r) for r in rows):
        raise InvalidParameters("a linear form vanishes identically mod p")
    if p ** (b * dim) > budget:
        raise BudgetExceeded(f"{p}^{b * dim} points exceed the budget {budget}")
    M = arrangement_matroid(rows, p)
    forms = [[x % p for x in r] for r in rows]
    count = 0
    for coords in product(range(p), repeat=dim * b):
        # coords[j*b + t] is component t of coordinate j
        ok = True
        for f in forms:
            if all(sum(f[j] * coords[j * b + t] for j in range(dim)) % p == 0 for t in range(b)):
                ok = False
                break
        if ok:
            count += 1
    return M, count


def finite_field_identity_holds(rows: Sequence[Sequence[int]], p: int, b: int = 1) -> bool:
    M, count = finite_field_count(rows, p, b)
    kappa = len(rows[0]) - M.rank
    return count == p ** (b * kappa) * characteristic_polynomial(M).poly(p**b)


@dataclass(frozen=True)
class SequenceShape:
    log_concave: bool
    ultra_log_concave: bool
    unimodal: bool
    real_rooted: bool


def _log_concave(a: Sequence[Fraction]) -> bool:
    return all(a[j - 1] * a[j + 1] <= a[j] ** 2 for j in range(1, len(a) - 1))


def sequence_checks(a: Sequence[int | Fraction], row: int | None = None) -> SequenceShape:
    """``row`` is the binomial row used for ultra-log-concavity, default ``len(a) - 1``."""
    a = [Fraction(x) for x in a]
    n = len(a) - 1 if row is None else row
    if n < len(a) - 1:
        raise InvalidParameters("binomial row shorter than the sequence")
    ultra = [x / comb(n, k) for k, x in enumerate(a)] if n >= 0 else []
    peak = 0
    while peak + 1 < len(a) and a[peak + 1] >= a[peak]:
        peak += 1
    unimodal = all(a[k + 1] <= a[k] for k in range(peak, len(a) - 1))
    return SequenceShape(
        log_concave=_log_concave(a),
        ultra_log_concave=_log_concave(ultra),
        unimodal=unimodal,
        real_rooted=is_real_rooted(UniPoly(a)),
    )
