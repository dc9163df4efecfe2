"""Exact signatures, Rayleigh quotients, rank-one downdates and Perron vectors."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    InternalMismatch,
    NoConvergence,
    NotIrreducible,
    NotWeaklyNonnegative,
    PreconditionViolated,
    ZeroVector,
)
from .linalg import SymMatrix
from .unipoly import UniPoly, distinct_real_roots, poly_gcd, sign_variations

try:
    import flint
except ImportError:  # pragma: no cover - exercised only without python-flint
    flint = None


class Signature(NamedTuple):
    p: int
    n: int
    z: int


def _integer_rows(A: SymMatrix) -> list[list[int]]:
    """A positive multiple of ``A`` with integer entries."""
    den = lcm(1, *(x.denominator for row in A.entries for x in row))
    return [[int(x * den) for x in row] for row in A.entries]


def _charpoly_faddeev(rows: list[list[int]]) -> list[int]:
    """Faddeev–LeVerrier over the rationals; coefficients from x^0 up."""
    n = len(rows)
    A = [[Fraction(x) for x in r] for r in rows]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prev = Mk
        Mk = [
            [sum((A[i][t] * prev[t][j] for t in range(n) if A[i][t]), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            Mk[i][i] += c_prev
        AM = [
            sum((A[i][t] * Mk[t][i] for t in range(n) if A[i][t]), Fraction(0)) for i in range(n)
        ]
        coeffs[n - k] = -sum(AM, Fraction(0)) / k
    return [int(c) for c in coeffs]


def characteristic_poly(A: SymMatrix) -> UniPoly:
    """Exact det(xI - A) of a positive integer multiple of ``A``.

    Scaling by a positive constant does not change any eigenvalue sign.
    """
    rows = _integer_rows(A)
    if not rows:
        return UniPoly([1])
    if flint is not None:
        coeffs = [int(c) for c in flint.fmpz_mat(rows).charpoly().coeffs()]
    else:
        coeffs = _charpoly_faddeev(rows)
    return UniPoly(coeffs)


def exact_charpoly(A: SymMatrix) -> UniPoly:
    """det(xI - A) for ``A`` itself (no scaling)."""
    n = A.dim
    den = lcm(1, *(x.denominator for row in A.entries for x in row))
    scaled = characteristic_poly(A)
    # scaled(x) = det(xI - den A) = den^n det((x/den) I - A)
    return UniPoly([Fraction(c, den ** (n - k)) for k, c in enumerate(scaled.coeffs)])


def signature_descartes(A: SymMatrix) -> Signature:
    """Sign counts from the characteristic polynomial, which is real-rooted."""
    coeffs = list(characteristic_poly(A).coeffs) if A.dim else [1]
    z = 0
    while z < len(coeffs) and coeffs[z] == 0:
        z += 1
    rest = coeffs[z:]
    p = sign_variations(rest)
    n = sign_variations([c if k % 2 == 0 else -c for k, c in enumerate(rest)])
    if p + n + z != A.dim:
        raise InternalMismatch(f"Descartes counts {(p, n, z)} do not add up to {A.dim}")
    return Signature(p, n, z)


def signature_ldl(A: SymMatrix) -> Signature:
    """Symmetric Gaussian elimination by congruences.

    A zero diagonal with a nonzero off-diagonal entry a_ij is fixed by adding
    row and column j to row and column i, which puts 2 a_ij on the diagonal.
    """
    m = [list(r) for r in A.entries]
    n = len(m)
    active = list(range(n))
    p = neg = 0
    while active:
        piv = next((i for i in active if m[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j]), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            p += 1
        else:
            neg += 1
        active.remove(piv)
        row = m[piv]
        for i in active:
            f = row[i] / d
            if f:
                mi = m[i]
                for k in active:
                    if row[k]:
                        mi[k] -= f * row[k]
    return Signature(p, neg, n - p - neg)


def signature(A: SymMatrix, method: str = "descartes") -> Signature:
    if method == "descartes":
        return signature_descartes(A)
    if method == "ldl":
        return signature_ldl(A)
    if method == "both":
        s, t = signature_descartes(A), signature_ldl(A)
        if s != t:
            raise InternalMismatch(f"Descartes {s} and LDL {t} disagree")
        return s
    raise ValueError(f"unknown signature method {method!r}")


def rayleigh(A: SymMatrix, x: Sequence) -> Fraction:
    x = [Fraction(v) for v in x]
    norm = sum((v * v for v in x), Fraction(0))
    if not norm:
        raise ZeroVector("Rayleigh quotient of the zero vector")
    return A.quadratic_form(x) / norm


def incidence_components(A: SymMatrix) -> int:
    n = A.dim
    seen = [False] * n
    comps = 0
    for s in range(n):
        if seen[s]:
            continue
        comps += 1
        stack = [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            for j, a in enumerate(A.entries[i]):
                if a and j != i and not seen[j]:
                    seen[j] = True
                    stack.append(j)
    return comps


def is_irreducible(A: SymMatrix) -> bool:
    """The graph of nonzero off-diagonal entries is connected."""
    return incidence_components(A) <= 1


def is_weakly_nonnegative(A: SymMatrix) -> bool:
    return all(a >= 0 for i, r in enumerate(A.entries) for j, a in enumerate(r) if i != j)


def largest_root_interval(P: UniPoly, width: Fraction, hint: float | None = None) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi]`` of length at most ``width`` containing the largest real root."""
    sf = P.exact_div(poly_gcd(P, P.derivative())) if P.degree > 0 else P
    bound = 1 + max(abs(Fraction(c) / Fraction(sf.coeffs[-1])) for c in sf.coeffs[:-1]) if sf.degree > 0 else Fraction(1)
    lo, hi = -bound, bound
    if hint is not None:
        guess = Fraction(hint).limit_denominator(10**12)
        pad = Fraction(1, 10**6) * (1 + abs(guess))
        if distinct_real_roots(sf, guess - pad, None) == 1 and distinct_real_roots(sf, guess + pad, None) == 0:
            lo, hi = guess - pad, guess + pad
    while hi - lo > width:
        mid = (lo + hi) / 2
        if distinct_real_roots(sf, mid, None) >= 1:
            lo = mid
        else:
            hi = mid
    return lo, hi


def largest_root_is_simple(A: SymMatrix, hint: float | None = None) -> bool:
    """Exact: the largest eigenvalue is not a root of gcd(P, P')."""
    P = characteristic_poly(A)
    g = poly_gcd(P, P.derivative())
    if g.degree <= 0:
        return True
    # P belongs to a positive integer multiple of A, so the hint scales with it
    den = lcm(1, *(x.denominator for row in A.entries for x in row))
    lo, _ = largest_root_interval(P, Fraction(1, 10**6), None if hint is None else hint * den)
    # exactly one distinct root of P lies above lo; it is repeated iff g vanishes there
    return distinct_real_roots(g, lo, None) == 0


def perron(
    A: SymMatrix, max_iter: int = 10**5, rel_tol: float = 1e-10
) -> tuple[float, np.ndarray, bool]:
    """Largest eigenvalue and positive eigenvector by shifted power iteration."""
    if not is_weakly_nonnegative(A):
        raise NotWeaklyNonnegative("a negative off-diagonal entry is present")
    if not is_irreducible(A):
        raise NotIrreducible("the incidence graph is disconnected")
    X = A.to_float()
    n = A.dim
    norm = float(A.inf_norm())
    # Gershgorin: after this shift every eigenvalue is nonnegative
    radii = np.abs(X).sum(axis=1) - np.abs(np.diag(X))
    shift = max(0.0, float(np.max(radii - np.diag(X))))
    S = X + shift * np.eye(n)
    v = np.ones(n) / np.sqrt(n)
    tol = rel_tol * max(norm, 1e-300)
    lam = float(v @ X @ v)
    for _ in range(max_iter):
        w = S @ v
        v = w / np.linalg.norm(w)
        lam = float(v @ X @ v)
        if np.max(np.abs(X @ v - lam * v)) <= tol:
            break
    else:
        raise NoConvergence(f"no convergence within {max_iter} iterations")
    if np.any(v <= 0):
        raise InternalMismatch("power iteration produced a non-positive vector")
    return lam, v, largest_root_is_simple(A, lam)


def downdate_check(A: SymMatrix, v: Sequence) -> bool:
    """If A has at most one positive eigenvalue then so does A - v vᵀ."""
    if signature(A).p > 1:
        raise PreconditionViolated("A has more than one positive eigenvalue")
    return signature(A.outer_downdate(v)).p <= 1


def restricted_gram(A: SymMatrix, x: Sequence, y: Sequence) -> SymMatrix:
    """The form of ``A`` restricted to span(x, y)."""
    return SymMatrix([[A.quadratic_form(x), A.quadratic_form(x, y)], [A.quadratic_form(y, x), A.quadratic_form(y)]])
