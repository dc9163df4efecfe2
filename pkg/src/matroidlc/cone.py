"""Submodular set functions and points of the ample cone."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

from .errors import BoundaryViolation, CertificationFailed, ImproperFlat, InvalidParameters, SizeCapExceeded
from .matroid import Matroid, elements_of, interval_minor
from .volume import ClassVector, QuotientBasis, interval_projection

MAX_SET_GROUND = 20


@dataclass(frozen=True)
class SetFunction:
    """Values indexed by subset bitmask."""

    ground_size: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.ground_size > MAX_SET_GROUND:
            raise SizeCapExceeded(f"set functions are capped at {MAX_SET_GROUND} elements")
        if len(self.values) != 1 << self.ground_size:
            raise InvalidParameters("table does not cover every subset")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def from_rule(cls, n: int, rule: Callable[[int], object]) -> "SetFunction":
        if n > MAX_SET_GROUND:
            raise SizeCapExceeded(f"set functions are capped at {MAX_SET_GROUND} elements")
        return cls(n, tuple(Fraction(rule(m)) for m in range(1 << n)))

    @property
    def full(self) -> int:
        return (1 << self.ground_size) - 1

    def __call__(self, subset: int) -> Fraction:
        return self.values[subset]

    def __add__(self, other: "SetFunction") -> "SetFunction":
        return SetFunction(self.ground_size, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "SetFunction") -> "SetFunction":
        return SetFunction(self.ground_size, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "SetFunction":
        c = Fraction(c)
        return SetFunction(self.ground_size, tuple(c * a for a in self.values))

    def check_boundary(self) -> None:
        if self.values[0] != 0 or self.values[self.full] != 0:
            raise BoundaryViolation(f"c(empty)={self.values[0]}, c(E)={self.values[self.full]}")


def _scaled(c: SetFunction) -> list[int]:
    den = lcm(1, *(v.denominator for v in c.values))
    return [int(v * den) for v in c.values]


def _submodular(c: SetFunction, strict: bool) -> bool:
    c.check_boundary()
    v = _scaled(c)
    full = c.full
    proper = range(1, full)
    for a in proper:
        va = v[a]
        for b in range(a + 1, full):
            inter = a & b
            if inter == a or inter == b:
                continue
            lhs = va + v[b]
            rhs = v[inter] + v[a | b]
            if lhs < rhs or (strict and lhs == rhs):
                return False
    return True


def is_submodular(c: SetFunction) -> bool:
    return _submodular(c, strict=False)


def is_strictly_submodular(c: SetFunction) -> bool:
    """Exhaustive check over all incomparable pairs of proper nonempty subsets."""
    return _submodular(c, strict=True)


def is_strictly_submodular_local(c: SetFunction) -> bool:
    """Equivalent check on squares S, S+i, S+j, S+i+j only."""
    c.check_boundary()
    v = _scaled(c)
    n = c.ground_size
    for s in range(c.full + 1):
        for i in range(n):
            if s >> i & 1:
                continue
            for j in range(i + 1, n):
                if s >> j & 1:
                    continue
                si, sj = s | 1 << i, s | 1 << j
                if v[si] + v[sj] <= v[s] + v[si | sj]:
                    return False
    return True


def c_plus(n: int) -> SetFunction:
    return SetFunction.from_rule(n, lambda m: m.bit_count() * (n - m.bit_count()))


def indicator(n: int, i: int, *, on_ground: bool = False) -> SetFunction:
    """``[i in I]``; by default zero on the whole ground set so the boundary holds."""
    full = (1 << n) - 1
    return SetFunction.from_rule(n, lambda m: (m >> i & 1) if (on_ground or m != full) else 0)


def avoider(n: int, i: int) -> SetFunction:
    """``[I nonempty and i not in I]``, which already vanishes on ∅ and E."""
    return SetFunction.from_rule(n, lambda m: 1 if m and not m >> i & 1 else 0)


@dataclass(frozen=True)
class AmplePoint:
    vector: ClassVector
    provenance: SetFunction
    positive: bool

    @property
    def matroid(self) -> Matroid:
        return self.vector.matroid

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return self.vector.coords


def induced_vector(M: Matroid, c: SetFunction, tag: str | None = None) -> ClassVector:
    return ClassVector(M, tuple(c(M.flats[f]) for f in M.proper_flats()), tag)


def ample_point(M: Matroid, c: SetFunction, tag: str | None = None) -> AmplePoint:
    if c.ground_size != M.ground_size:
        raise InvalidParameters("set function and matroid have different ground sets")
    if not is_strictly_submodular(c):
        raise CertificationFailed("provenance is not strictly submodular")
    vec = induced_vector(M, c, tag)
    return AmplePoint(vec, c, vec.is_positive())


def canonical_ample(M: Matroid) -> AmplePoint:
    return ample_point(M, c_plus(M.ground_size), "canonical")


def sample_ample(M: Matroid, seed: int) -> AmplePoint:
    """``λ c₊ + Σ a_i c_i`` with λ in 1..8 and a_i in 0..8."""
    rng = random.Random(seed)
    n = M.ground_size
    lam = rng.randint(1, 8)
    weights = [rng.randint(0, 8) for _ in range(n)]
    full = (1 << n) - 1

    def rule(m: int) -> int:
        k = m.bit_count()
        extra = sum(weights[i] for i in elements_of(m)) if m != full else 0
        return lam * k * (n - k) + extra

    return ample_point(M, SetFunction.from_rule(n, rule), f"sample{seed}")


def effective_representative(u: AmplePoint) -> ClassVector:
    """A nonnegative representative with at least one positive coordinate.

    With [j] = {1..j}, subtract Σ_j (c([j]) - c([j-1]))(c_j - c_0).  The
    result vanishes on every [j], and strict submodularity then forces it to
    be nonnegative on all proper subsets.  Each term is a difference of
    modular functions, so the class does not move.
    """
    c = u.provenance
    n = c.ground_size
    prefix = lambda j: ((1 << (j + 1)) - 1) & ~1  # {1..j}
    vals = list(c.values)
    for j in range(1, n):
        d = c(prefix(j)) - (c(prefix(j - 1)) if j > 1 else 0)
        if d:
            for m in range(1 << n):
                vals[m] -= d * ((m >> j & 1) - (m & 1))
    out = SetFunction(n, tuple(vals))
    return induced_vector(u.matroid, out, "effective")


def approach_alpha(M: Matroid, i: int, eps) -> AmplePoint:
    """``y_{c_i + ε c₊}``, which tends to α_i as ε → 0."""
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidParameters("eps must be positive")
    n = M.ground_size
    return ample_point(M, indicator(n, i) + c_plus(n).scale(eps), f"alpha{i}+{eps}c+")


def approach_beta(M: Matroid, i: int, eps) -> AmplePoint:
    """``y_{b_i + ε c₊}`` with b_i(I) = [I ≠ ∅, i ∉ I], which tends to β_i."""
    from .volume import beta_vector

    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidParameters("eps must be positive")
    n = M.ground_size
    b = avoider(n, i)
    if induced_vector(M, b).coords != beta_vector(M, i).coords:
        raise CertificationFailed("avoider function does not induce beta")
    return ample_point(M, b + c_plus(n).scale(eps), f"beta{i}+{eps}c+")


def project_ample(u: AmplePoint, F: int, direction: str) -> AmplePoint:
    """Image of an ample class in the restriction below ``F`` (``up``) or the
    contraction above ``F`` (``down``), certified by its own set function.

    The representative is first moved by ``-c(F)(c_i - c_j)`` with i in F and
    j outside so that it vanishes on F; then the linear projection and the
    restricted or contracted set function give the same coordinates.
    """
    M = u.matroid
    if F in (M.bottom, M.top):
        raise ImproperFlat(f"flat {F} is not proper")
    c = u.provenance
    n = c.ground_size
    fmask = M.flats[F]
    i = elements_of(fmask)[0]
    j = elements_of(M.full & ~fmask)[0]
    cf = c(fmask)
    shifted = SetFunction(
        n, tuple(v - cf * ((m >> i & 1) - (m >> j & 1)) for m, v in enumerate(c.values))
    )
    if direction == "up":
        minor, old = interval_minor(M, M.bottom, F)
        proj = interval_projection(M, M.bottom, F)
        rule = lambda m: shifted(sum(1 << old[k] for k in elements_of(m)))
    elif direction == "down":
        minor, old = interval_minor(M, F, M.top)
        proj = interval_projection(M, F, M.top)
        rule = lambda m: shifted(sum(1 << old[k] for k in elements_of(m)) | fmask)
    else:
        raise InvalidParameters("direction must be 'up' or 'down'")
    derived = SetFunction.from_rule(len(old), rule)
    if not is_strictly_submodular(derived):
        raise CertificationFailed(f"projected set function at flat {F} is not strictly submodular")
    vec = induced_vector(minor, derived, f"{direction}{F}")
    if vec.coords != proj.apply(induced_vector(M, shifted).coords):
        raise CertificationFailed("linear projection disagrees with the derived set function")
    if not QuotientBasis(minor).same_class(vec, ClassVector(minor, proj.apply(u.coords))):
        raise CertificationFailed("projection of the original representative left the class")
    return AmplePoint(vec, derived, vec.is_positive())
