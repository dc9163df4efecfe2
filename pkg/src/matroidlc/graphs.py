"""Finite multigraphs with loops, their colorings, flats and graphic matroids."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .errors import InvalidParameters, SizeCapExceeded
from .matroid import Matroid, elements_of, mask_of, validate_flats
from .unipoly import UniPoly

COLORING_BUDGET = 10**7
FLAT_BUDGET = 4096


@dataclass(frozen=True)
class Graph:
    """Edges are stored as ordered pairs; every algorithm treats them as unordered."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple((int(a), int(b)) for a, b in self.edges))
        for a, b in self.edges:
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise InvalidParameters(f"edge ({a}, {b}) has an endpoint out of range")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_loop(self) -> bool:
        return any(a == b for a, b in self.edges)

    def adjacency(self) -> set[frozenset[int]]:
        """Unordered adjacent pairs of distinct vertices."""
        return {frozenset(e) for e in self.edges if e[0] != e[1]}


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Component label per vertex, labels numbered by smallest vertex."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots: dict[int, int] = {}
    return [roots.setdefault(find(v), len(roots)) for v in range(n)]


def component_count(G: Graph) -> int:
    return len(set(_components(G.vertex_count, G.edges)))


def is_connected(G: Graph) -> bool:
    return component_count(G) <= 1


def coloring_count(G: Graph, q: int, budget: int = COLORING_BUDGET) -> int:
    """Proper colorings with ``q`` colors by exhaustive enumeration."""
    if q < 1:
        raise InvalidParameters("q must be a positive integer")
    if G.has_loop():
        return 0
    if q**G.vertex_count > budget:
        raise SizeCapExceeded(f"{q}^{G.vertex_count} colorings exceed the budget {budget}")
    pairs = sorted(G.adjacency(), key=sorted)
    pairs = [tuple(p) for p in pairs]
    return sum(
        1
        for colors in product(range(q), repeat=G.vertex_count)
        if all(colors[a] != colors[b] for a, b in pairs)
    )


def restriction(G: Graph, S: Iterable[int]) -> Graph:
    """All vertices, only the edges with ids in ``S`` (kept in id order)."""
    keep = sorted(set(S))
    return Graph(G.vertex_count, tuple(G.edges[e] for e in keep))


def contraction(G: Graph, S: Iterable[int]) -> Graph:
    """Vertices are the components of the restriction to ``S``; the other edges
    are reattached to those components in id order."""
    chosen = set(S)
    comp = _components(G.vertex_count, (G.edges[e] for e in chosen))
    rest = tuple(
        (comp[a], comp[b]) for e, (a, b) in enumerate(G.edges) if e not in chosen
    )
    return Graph(len(set(comp)), rest)


def edge_closure(G: Graph, S: int) -> int:
    """Edges whose endpoints are joined by a path inside the edge set ``S`` (a bitmask)."""
    comp = _components(G.vertex_count, (G.edges[e] for e in elements_of(S)))
    return mask_of(e for e, (a, b) in enumerate(G.edges) if comp[a] == comp[b])


def graph_flats(G: Graph, budget: int = FLAT_BUDGET) -> list[int]:
    """All flats as edge bitmasks, found by closing one more edge at a time."""
    start = edge_closure(G, 0)
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for e in range(G.edge_count):
            if not f >> e & 1:
                g = edge_closure(G, f | 1 << e)
                if g not in seen:
                    seen.add(g)
                    if len(seen) > budget:
                        raise SizeCapExceeded(f"more than {budget} flats")
                    stack.append(g)
    return sorted(seen)


def graphic_matroid(G: Graph, budget: int = FLAT_BUDGET) -> Matroid:
    return validate_flats(graph_flats(G, budget), G.edge_count, max_flats=budget)


def graph_rank(G: Graph, S: Iterable[int]) -> int:
    """|V| minus the number of components of the restriction to ``S``."""
    return G.vertex_count - component_count(restriction(G, S))


def _canonical(G: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    return G.vertex_count, tuple(sorted(tuple(sorted(e)) for e in G.edges))


@lru_cache(maxsize=4096)
def _chromatic(key: tuple[int, tuple[tuple[int, int], ...]]) -> UniPoly:
    n, edges = key
    G = Graph(n, edges)
    if G.has_loop():
        return UniPoly()
    out = UniPoly.monomial(n)
    for f in graph_flats(G):
        if f:
            out = out - _chromatic(_canonical(contraction(G, elements_of(f))))
    return out


def chromatic_polynomial(G: Graph) -> UniPoly:
    """Subtract the contributions of all nonempty flats from q^|V|.

    Contracting a flat leaves a loopless graph whose colorings are the
    colorings of G that are constant exactly on the flat's components.
    """
    return _chromatic(_canonical(G))


def join(graphs: Sequence[Graph]) -> Graph:
    """Disjoint union with every pair of vertices from different parts joined."""
    if not graphs:
        raise InvalidParameters("join needs at least one graph")
    edges: list[tuple[int, int]] = []
    offsets = []
    total = 0
    for g in graphs:
        offsets.append(total)
        edges.extend((a + total, b + total) for a, b in g.edges)
        total += g.vertex_count
    for i, gi in enumerate(graphs):
        for j in range(i + 1, len(graphs)):
            gj = graphs[j]
            for a in range(gi.vertex_count):
                for b in range(gj.vertex_count):
                    edges.append((a + offsets[i], b + offsets[j]))
    return Graph(total, tuple(edges))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((a, b) for a in range(n) for b in range(a + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((k, (k + 1) % n) for k in range(n)))


def square_with_diagonal() -> Graph:
    return Graph(4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2)))
