"""Volume polynomials and the coordinate space spanned by proper flats.

Coordinates on the proper flats of ``M`` are indexed by position: the flat
with id ``F`` sits at position ``F - 1`` (ids 0 and top are the bottom and
top flats).  Every interval volume is expressed in these host coordinates,
so memoized pieces combine without any relabeling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    ElementOutOfRange,
    ImproperFlat,
    LoopyMatroid,
    NotComparable,
    RankOutOfRange,
)
from .linalg import LinearMap
from .matroid import Matroid, elements_of, normalize_chain
from .polyalg import MultiPoly


def pos(fid: int) -> int:
    return fid - 1


def n_coords(M: Matroid) -> int:
    return max(len(M) - 2, 0)


@dataclass(frozen=True)
class ClassVector:
    """A representative ``Σ t_F δ_F`` of a class in the quotient by W."""

    matroid: Matroid
    coords: tuple[Fraction, ...]
    tag: str | None = None

    def __post_init__(self) -> None:
        if len(self.coords) != n_coords(self.matroid):
            raise ValueError(f"{len(self.coords)} coordinates for {n_coords(self.matroid)} proper flats")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __getitem__(self, fid: int) -> Fraction:
        return self.coords[pos(fid)]

    def __add__(self, other: "ClassVector") -> "ClassVector":
        return ClassVector(self.matroid, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ClassVector") -> "ClassVector":
        return ClassVector(self.matroid, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "ClassVector":
        c = Fraction(c)
        return ClassVector(self.matroid, tuple(c * a for a in self.coords))

    def is_positive(self) -> bool:
        return all(c > 0 for c in self.coords)

    def pairs(self) -> list[tuple[int, Fraction]]:
        return [(i + 1, c) for i, c in enumerate(self.coords)]


def delta_vector(M: Matroid, fid: int) -> ClassVector:
    if fid in (M.bottom, M.top):
        raise ImproperFlat(f"flat {fid} is not proper")
    c = [Fraction(0)] * n_coords(M)
    c[pos(fid)] = Fraction(1)
    return ClassVector(M, tuple(c))


def _check_element(M: Matroid, i: int) -> None:
    if not 0 <= i < M.ground_size:
        raise ElementOutOfRange(f"element {i} outside the ground set")
    if M.flats[M.bottom] >> i & 1:
        raise ElementOutOfRange(f"element {i} is a loop")


def alpha_vector(M: Matroid, i: int) -> ClassVector:
    """Sum of δ_F over proper flats containing ``i``."""
    _check_element(M, i)
    return ClassVector(M, tuple(Fraction(M.flats[f] >> i & 1) for f in M.proper_flats()), f"alpha{i}")


def beta_vector(M: Matroid, i: int) -> ClassVector:
    """Sum of δ_F over proper flats avoiding ``i``."""
    _check_element(M, i)
    return ClassVector(M, tuple(Fraction(1 - (M.flats[f] >> i & 1)) for f in M.proper_flats()), f"beta{i}")


def first_nonloop(M: Matroid) -> int:
    free = M.full & ~M.flats[M.bottom]
    if not free:
        raise ElementOutOfRange("every element is a loop")
    return (free & -free).bit_length() - 1


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# quotient by W


class QuotientBasis:
    """Row echelon form of the span of all α_i - α_j."""

    def __init__(self, M: Matroid):
        self.matroid = M
        m = n_coords(M)
        free = [e for e in range(M.ground_size) if not M.flats[M.bottom] >> e & 1]
        spanning = []
        if free:
            base = alpha_vector(M, free[0]).coords
            for e in free[1:]:
                spanning.append([a - b for a, b in zip(alpha_vector(M, e).coords, base)])
        self.spanning = [tuple(v) for v in spanning]
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []
        for v in spanning:
            r = self._reduce(list(v))
            lead = next((k for k, x in enumerate(r) if x), None)
            if lead is None:
                continue
            inv = 1 / r[lead]
            r = [x * inv for x in r]
            for row in self.rows:
                if row[lead]:
                    f = row[lead]
                    for k in range(m):
                        row[k] -= f * r[k]
            self.rows.append(r)
            self.pivots.append(lead)
        self.complement = tuple(k for k in range(m) if k not in self.pivots)

    def _reduce(self, v: list[Fraction]) -> list[Fraction]:
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    @property
    def dim_w(self) -> int:
        return len(self.rows)

    @property
    def dim_l(self) -> int:
        return n_coords(self.matroid) - self.dim_w

    def contains(self, v: Sequence) -> bool:
        return not any(self._reduce([Fraction(x) for x in v]))

    def same_class(self, u: ClassVector, v: ClassVector) -> bool:
        return self.contains([a - b for a, b in zip(u.coords, v.coords)])


# projections


def interval_projection(M: Matroid, lo: int, hi: int) -> LinearMap:
    """Composite projection onto the coordinates of the interval minor [lo, hi].

    δ_H passes through for lo < H < hi, δ_lo goes to -β and δ_hi to -α of
    the minor (both built from the smallest element of hi - lo), and every
    other δ_G vanishes.
    """
    if not M.leq(lo, hi):
        raise NotComparable(f"flat {lo} is not contained in flat {hi}")
    inner = M.open_interval(lo, hi)
    e = _lowest(M.flats[hi] & ~M.flats[lo]) if hi != lo else 0
    rows = []
    for h in inner:
        row = [Fraction(0)] * n_coords(M)
        row[pos(h)] = Fraction(1)
        inside = M.flats[h] >> e & 1
        if lo != M.bottom:
            row[pos(lo)] = Fraction(-(1 - inside))
        if hi != M.top:
            row[pos(hi)] = Fraction(-inside)
        rows.append(row)
    return LinearMap(rows, n_coords(M))


def projection_up(M: Matroid, F: int) -> LinearMap:
    if F in (M.bottom, M.top):
        raise ImproperFlat(f"flat {F} is not proper")
    return interval_projection(M, M.bottom, F)


def projection_down(M: Matroid, F: int) -> LinearMap:
    if F in (M.bottom, M.top):
        raise ImproperFlat(f"flat {F} is not proper")
    return interval_projection(M, F, M.top)


# volume polynomial


class VolumeEngine:
    """Memoized interval volumes of one matroid, in its coordinates.

    The volume of [A, B] comes from the Euler recursion
    ``V = 1/(rk B - rk A - 1) Σ_F t_F · V_[A,F](π^F t) · V_[F,B](π_F t)``.
    """

    def __init__(self, M: Matroid):
        if not M.loopless:
            raise LoopyMatroid(f"loops {M.loops} present")
        self.matroid = M
        self.arity = n_coords(M)
        self._memo: dict[tuple[int, int], MultiPoly] = {}
        self._up: dict[tuple[int, int], MultiPoly] = {}
        self._down: dict[tuple[int, int], MultiPoly] = {}
        self._var = [MultiPoly.variable(self.arity, v) for v in range(self.arity)]

    def interval(self, lo: int, hi: int) -> MultiPoly:
        key = (lo, hi)
        if key in self._memo:
            return self._memo[key]
        M = self.matroid
        if not M.leq(lo, hi):
            raise NotComparable(f"flat {lo} is not contained in flat {hi}")
        rk = M.ranks[hi] - M.ranks[lo]
        if rk == 0:
            out = MultiPoly(self.arity)
        elif rk == 1:
            out = MultiPoly.constant(self.arity, 1)
        else:
            out = MultiPoly(self.arity)
            for f in M.open_interval(lo, hi):
                out = out + self._var[pos(f)] * self._projected_up(lo, f) * self._projected_down(f, hi)
            out = out.scale(Fraction(1, rk - 1))
        self._memo[key] = out
        return out

    def _projected_up(self, lo: int, f: int) -> MultiPoly:
        """V_[lo,f] with t_H replaced by t_H - t_f for H containing min(f - lo)."""
        key = (lo, f)
        if key not in self._up:
            M = self.matroid
            i = _lowest(M.flats[f] & ~M.flats[lo])
            tf = self._var[pos(f)]
            images = {pos(h): self._var[pos(h)] - tf for h in M.open_interval(lo, f) if M.flats[h] >> i & 1}
            self._up[key] = self.interval(lo, f).substitute(images)
        return self._up[key]

    def _projected_down(self, f: int, hi: int) -> MultiPoly:
        """V_[f,hi] with t_H replaced by t_H - t_f for H avoiding min(hi - f)."""
        key = (f, hi)
        if key not in self._down:
            M = self.matroid
            j = _lowest(M.flats[hi] & ~M.flats[f])
            tf = self._var[pos(f)]
            images = {pos(h): self._var[pos(h)] - tf for h in M.open_interval(f, hi) if not M.flats[h] >> j & 1}
            self._down[key] = self.interval(f, hi).substitute(images)
        return self._down[key]

    def volume(self) -> MultiPoly:
        M = self.matroid
        return self.interval(M.bottom, M.top)


def volume_polynomial(M: Matroid, engine: VolumeEngine | None = None) -> MultiPoly:
    engine = engine or VolumeEngine(M)
    return engine.volume()


def mixed_degree(M: Matroid, k: int, element: int | None = None, V: MultiPoly | None = None) -> Fraction:
    """``D_α^{r-k} D_β^k V_M`` for α, β built from one element."""
    r = M.rank - 1
    if not 0 <= k <= r:
        raise RankOutOfRange(f"k={k} outside 0..{r}")
    V = volume_polynomial(M) if V is None else V
    i = first_nonloop(M) if element is None else element
    a, b = alpha_vector(M, i).coords, beta_vector(M, i).coords
    g = V
    for _ in range(r - k):
        g = g.directional_derivative(a)
    for _ in range(k):
        g = g.directional_derivative(b)
    return g.evaluate([0] * g.arity)


def flat_avoiding_representative(u: ClassVector, chain: Sequence[int]) -> ClassVector:
    """Same class as ``u`` with zero coordinates on every chain flat.

    Subtracts ``(t_{F_j} - t_{F_{j-1}})(α_{i_j} - α_i)`` for each chain step,
    with ``i_j`` in ``F_j - F_{j-1}`` and ``i`` outside the last flat.
    """
    M = u.matroid
    inner = normalize_chain(M, chain)
    if not inner:
        return u
    t = list(u.coords)
    outside = _lowest(M.full & ~M.flats[inner[-1]])
    a_out = alpha_vector(M, outside).coords
    prev_val = Fraction(0)
    prev_flat = M.bottom
    for f in inner:
        step = _lowest(M.flats[f] & ~M.flats[prev_flat])
        c = u[f] - prev_val
        a_step = alpha_vector(M, step).coords
        t = [x - c * (p - q) for x, p, q in zip(t, a_step, a_out)]
        prev_val, prev_flat = u[f], f
    return ClassVector(M, tuple(t), "flat-avoiding")


# chain products


@dataclass(frozen=True)
class ChainContext:
    """Product space of the interval minors cut out by a chain.

    ``blocks[k]`` lists the host flat ids of the k-th interval, in canonical
    order; ``variables`` concatenates the blocks.
    """

    matroid: Matroid
    chain: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    variables: tuple[int, ...]
    projection: LinearMap
    poly: MultiPoly = field(repr=False)

    @property
    def bounds(self) -> tuple[tuple[int, int], ...]:
        full = (self.matroid.bottom,) + self.chain + (self.matroid.top,)
        return tuple(zip(full, full[1:]))


def chain_product(M: Matroid, chain: Sequence[int], engine: VolumeEngine | None = None) -> ChainContext:
    engine = engine or VolumeEngine(M)
    inner = normalize_chain(M, chain)
    full = (M.bottom,) + inner + (M.top,)
    blocks = tuple(M.open_interval(a, b) for a, b in zip(full, full[1:]))
    variables = tuple(f for b in blocks for f in b)
    where = {pos(f): k for k, f in enumerate(variables)}
    arity = len(variables)
    f = MultiPoly.constant(arity, 1)
    for a, b in zip(full, full[1:]):
        f = f * engine.interval(a, b).rename(where, arity)
    rows = []
    for a, b in zip(full, full[1:]):
        rows.extend(interval_projection(M, a, b).entries)
    return ChainContext(M, inner, blocks, variables, LinearMap(rows, n_coords(M)), f)


def chain_identity_holds(M: Matroid, chain: Sequence[int], engine: VolumeEngine | None = None) -> bool:
    """``D_{F_1}⋯D_{F_l} V_M == f∘π`` exactly."""
    engine = engine or VolumeEngine(M)
    ctx = chain_product(M, chain, engine)
    lhs = engine.volume()
    for fid in ctx.chain:
        lhs = lhs.differentiate(pos(fid))
    return lhs == ctx.poly.substitute_linear(ctx.projection)


def volume_flat_names(M: Matroid) -> list[str]:
    return ["t{" + ",".join(map(str, elements_of(M.flats[f]))) + "}" for f in M.proper_flats()]
