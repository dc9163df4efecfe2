"""Matroids represented by their lattice of flats.

Flats are stored as integer bitmasks over the ground set ``{0..n}`` and are
indexed in canonical order: by cardinality, then lexicographically by their
sorted element lists.  Every other module refers to flats by these ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    AxiomF1Violation,
    AxiomF2Violation,
    AxiomF3Violation,
    InternalMismatch,
    InvalidParameters,
    NotComparable,
    SizeCapExceeded,
)

MAX_GROUND = 64


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def _canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (mask.bit_count(), elements_of(mask))


@dataclass(frozen=True, eq=False)
class Matroid:
    """A validated lattice of flats.  Build with :func:`validate_flats`."""

    ground_size: int
    flats: tuple[int, ...]
    covers: tuple[tuple[int, ...], ...]
    ranks: tuple[int, ...]
    index: Mapping[int, int] = field(repr=False)

    @property
    def full(self) -> int:
        return (1 << self.ground_size) - 1

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.flats) - 1

    @property
    def rank(self) -> int:
        return self.ranks[self.top]

    @property
    def loopless(self) -> bool:
        return self.flats[0] == 0

    @property
    def loops(self) -> tuple[int, ...]:
        return elements_of(self.flats[0])

    def __len__(self) -> int:
        return len(self.flats)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.ground_size == other.ground_size and self.flats == other.flats

    def __hash__(self) -> int:
        return hash((self.ground_size, self.flats))

    def members(self, fid: int) -> tuple[int, ...]:
        return elements_of(self.flats[fid])

    def flat_id(self, elements: Iterable[int] | int) -> int:
        m = elements if isinstance(elements, int) else mask_of(elements)
        try:
            return self.index[m]
        except KeyError:
            raise InvalidParameters(f"{elements_of(m)} is not a flat") from None

    def leq(self, a: int, b: int) -> bool:
        """Inclusion of flat ``a`` in flat ``b``."""
        fa = self.flats[a]
        return fa & self.flats[b] == fa

    def proper_flats(self) -> tuple[int, ...]:
        return tuple(range(1, self.top)) if self.top > 0 else ()

    def flats_of_rank(self, k: int) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.ranks) if r == k)

    def open_interval(self, a: int, b: int) -> tuple[int, ...]:
        """Flat ids strictly between ``a`` and ``b``."""
        fa, fb = self.flats[a], self.flats[b]
        return tuple(
            i
            for i in range(a + 1, b)
            if self.flats[i] & fa == fa and self.flats[i] & fb == self.flats[i] and i != b
        )

    def closure(self, subset: Iterable[int] | int) -> int:
        """Id of the smallest flat containing ``subset``."""
        m = subset if isinstance(subset, int) else mask_of(subset)
        acc = self.full
        for f in self.flats:
            if f & m == m:
                acc &= f
        return self.index[acc]

    def rank_of_set(self, subset: Iterable[int] | int) -> int:
        return self.ranks[self.closure(subset)]

    def to_dict(self) -> dict:
        return {
            "ground": self.ground_size,
            "flats": [list(elements_of(f)) for f in self.flats],
        }


def _f3_hits(flats: Sequence[int], full: int, f: int, covers: Iterable[int]) -> dict[int, int]:
    hits = {}
    for c in covers:
        diff = flats[c] & ~f
        for e in elements_of(diff):
            hits[e] = hits.get(e, 0) + 1
    return {e: hits.get(e, 0) for e in elements_of(full & ~f)}


def _raw_covers(flats: Sequence[int]) -> list[list[int]]:
    """Cover relation on an inclusion-sorted list of masks."""
    n = len(flats)
    covers: list[list[int]] = [[] for _ in range(n)]
    for i, f in enumerate(flats):
        # candidates arrive by increasing size, so comparing against the
        # minimal ones found so far is enough
        for j in range(i + 1, n):
            g = flats[j]
            if g & f == f and g != f:
                if not any(flats[k] & g == flats[k] for k in covers[i]):
                    covers[i].append(j)
    return covers


def satisfies_f3(subsets: Iterable[Iterable[int]], ground_size: int) -> bool:
    """Cover differences of every member partition its complement."""
    flats = sorted({mask_of(s) for s in subsets}, key=_canonical_key)
    full = (1 << ground_size) - 1
    covers = _raw_covers(flats)
    return all(
        all(h == 1 for h in _f3_hits(flats, full, f, covers[i]).values())
        for i, f in enumerate(flats)
    )


def satisfies_f3_prime(subsets: Iterable[Iterable[int]], ground_size: int) -> bool:
    """Every element outside a member lies in some cover of that member.

    Checked directly on the family without the cover-partition machinery.
    """
    family = {mask_of(s) for s in subsets}
    full = (1 << ground_size) - 1
    for f in family:
        strictly_above = [g for g in family if g & f == f and g != f]
        minimal = [
            g for g in strictly_above
            if not any(h & g == h and h != g for h in strictly_above)
        ]
        for e in elements_of(full & ~f):
            if not any(g >> e & 1 for g in minimal):
                return False
    return True


def validate_flats(
    subsets: Iterable[Iterable[int] | int],
    ground_size: int,
    *,
    max_flats: int | None = None,
) -> Matroid:
    """Check the flat axioms and build the indexed lattice."""
    if ground_size < 0 or ground_size > MAX_GROUND:
        raise SizeCapExceeded(f"ground size {ground_size} outside 0..{MAX_GROUND}")
    full = (1 << ground_size) - 1
    masks = set()
    for s in subsets:
        m = s if isinstance(s, int) else mask_of(s)
        if m & ~full:
            raise InvalidParameters(f"subset {elements_of(m)} leaves the ground set")
        masks.add(m)
    if max_flats is not None and len(masks) > max_flats:
        raise SizeCapExceeded(f"{len(masks)} flats exceed the cap of {max_flats}")
    if full not in masks:
        raise AxiomF1Violation("the ground set is not a flat")

    flats = sorted(masks, key=_canonical_key)
    for a, b in combinations(flats, 2):
        if a & b not in masks:
            raise AxiomF2Violation(frozenset(elements_of(a)), frozenset(elements_of(b)))

    covers = _raw_covers(flats)
    for i, f in enumerate(flats):
        for e, h in _f3_hits(flats, full, f, covers[i]).items():
            if h != 1:
                raise AxiomF3Violation(frozenset(elements_of(f)), e, h)

    # F2 makes flats[0] the unique minimum; layer ranks breadth-first from it
    ranks: list[int | None] = [None] * len(flats)
    ranks[0] = 0
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in covers[i]:
            if ranks[j] is None:
                ranks[j] = ranks[i] + 1
                queue.append(j)
            elif ranks[j] != ranks[i] + 1:
                raise InternalMismatch(f"cover layering is inconsistent at flat {j}")
    if any(r is None for r in ranks):
        raise InternalMismatch("some flat is unreachable from the bottom flat")

    return Matroid(
        ground_size=ground_size,
        flats=tuple(flats),
        covers=tuple(tuple(c) for c in covers),
        ranks=tuple(ranks),  # type: ignore[arg-type]
        index={f: i for i, f in enumerate(flats)},
    )


def uniform(r: int, n: int) -> Matroid:
    """The uniform matroid U_{r,n} on ``n`` elements."""
    if r < 0 or n < 0 or r > n:
        raise InvalidParameters(f"uniform({r}, {n}) needs 0 <= r <= n")
    subsets: list[int] = [(1 << n) - 1]
    for k in range(r):
        subsets.extend(mask_of(c) for c in combinations(range(n), k))
    return validate_flats(subsets, n)


def interval_minor(M: Matroid, lo: int, hi: int) -> tuple[Matroid, tuple[int, ...]]:
    """The loopless minor on ``hi - lo`` whose flats are ``H - lo`` for lo <= H <= hi.

    Returns the minor and the old element for each new element index.
    """
    if not M.leq(lo, hi):
        raise NotComparable(f"flat {lo} is not contained in flat {hi}")
    flo, fhi = M.flats[lo], M.flats[hi]
    old = elements_of(fhi & ~flo)
    new_of = {e: k for k, e in enumerate(old)}
    subsets = []
    for f in M.flats:
        if f & flo == flo and f & fhi == f:
            subsets.append(mask_of(new_of[e] for e in elements_of(f & ~flo)))
    return validate_flats(subsets, len(old)), old


def direct_sum(M: Matroid, M2: Matroid) -> Matroid:
    shift = M.ground_size
    subsets = [f | (g << shift) for f in M.flats for g in M2.flats]
    return validate_flats(subsets, M.ground_size + M2.ground_size)


def truncation(M: Matroid, i: int) -> Matroid:
    """Keep flats of rank at most ``rank(M) - 1 - i`` together with the ground set."""
    if not 1 <= i <= M.rank - 1:
        raise InvalidParameters(f"truncation depth {i} outside 1..{M.rank - 1}")
    cut = M.rank - 1 - i
    subsets = [f for f, r in zip(M.flats, M.ranks) if r <= cut]
    subsets.append(M.full)
    return validate_flats(subsets, M.ground_size)


def relabel(M: Matroid, bijection: Sequence[int]) -> Matroid:
    """Image of ``M`` under the element map ``e -> bijection[e]``."""
    if sorted(bijection) != list(range(M.ground_size)):
        raise InvalidParameters("relabeling must be a permutation of the ground set")
    return validate_flats(
        [mask_of(bijection[e] for e in elements_of(f)) for f in M.flats], M.ground_size
    )


def is_relabeling(M: Matroid, M2: Matroid, bijection: Sequence[int]) -> bool:
    if M.ground_size != M2.ground_size or len(M) != len(M2):
        return False
    image = {mask_of(bijection[e] for e in elements_of(f)) for f in M.flats}
    return image == set(M2.flats)


def flat_graph(M: Matroid):
    """Comparability graph on the proper flats, vertices in canonical order."""
    from .graphs import Graph

    proper = M.proper_flats()
    edges = [
        (a, b)
        for a, b in combinations(range(len(proper)), 2)
        if M.leq(proper[a], proper[b]) or M.leq(proper[b], proper[a])
    ]
    return Graph(len(proper), tuple(edges))


def independent_set_counts(M: Matroid) -> tuple[int, ...]:
    """Number of independent sets of each size, grown one element at a time."""
    counts = [1]
    layer = [0]
    for size in range(1, M.rank + 1):
        nxt = []
        for base in layer:
            top = base.bit_length()
            for e in range(top, M.ground_size):
                m = base | (1 << e)
                if M.rank_of_set(m) == size:
                    nxt.append(m)
        counts.append(len(nxt))
        layer = nxt
    return tuple(counts)


def maximal_chains(M: Matroid, lo: int | None = None, hi: int | None = None) -> Iterator[tuple[int, ...]]:
    """All saturated chains from ``lo`` to ``hi`` (endpoints included)."""
    lo = M.bottom if lo is None else lo
    hi = M.top if hi is None else hi
    if not M.leq(lo, hi):
        raise NotComparable(f"flat {lo} is not contained in flat {hi}")

    def walk(path: list[int]) -> Iterator[tuple[int, ...]]:
        here = path[-1]
        if here == hi:
            yield tuple(path)
            return
        for c in M.covers[here]:
            if M.leq(c, hi):
                path.append(c)
                yield from walk(path)
                path.pop()

    yield from walk([lo])


def normalize_chain(M: Matroid, chain: Sequence[int]) -> tuple[int, ...]:
    """Strip the bottom and top flats and check strict inclusion."""
    inner = tuple(c for c in chain if c not in (M.bottom, M.top))
    for a, b in zip((M.bottom,) + inner, inner + (M.top,)):
        if a == b or not M.leq(a, b):
            raise NotComparable(f"flats {a} and {b} are not strictly nested")
    return inner
