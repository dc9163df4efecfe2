import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import corpus_graphs
from matroidlc.errors import SizeCapExceeded
from matroidlc.graphs import (
    Graph,
    chromatic_polynomial,
    coloring_count,
    complete_graph,
    component_count,
    contraction,
    graph_flats,
    graph_rank,
    graphic_matroid,
    is_connected,
    join,
    restriction,
    square_with_diagonal,
)
from matroidlc.matroid import elements_of, interval_minor, uniform
from matroidlc.unipoly import UniPoly, lagrange_interpolate


def brute_colorings(G, q):
    """Independent count: treat every edge, loops included, as a constraint."""
    return sum(
        1
        for colors in product(range(q), repeat=G.vertex_count)
        if all(colors[a] != colors[b] for a, b in G.edges)
    )


def test_square_with_diagonal_three_colors():
    assert coloring_count(square_with_diagonal(), 3) == 6


def test_one_color_with_an_edge():
    assert coloring_count(Graph(2, ((0, 1),)), 1) == 0


def test_triangle_three_colors():
    assert coloring_count(complete_graph(3), 3) == 6 == brute_colorings(complete_graph(3), 3)


def test_loop_has_no_colorings():
    assert coloring_count(Graph(2, ((1, 1),)), 4) == 0


def test_coloring_budget():
    with pytest.raises(SizeCapExceeded):
        coloring_count(Graph(10), 10, budget=1000)


def test_chromatic_square_with_diagonal():
    assert chromatic_polynomial(square_with_diagonal()) == UniPoly([0, -4, 8, -5, 1])


@pytest.mark.parametrize("m", range(5))
def test_chromatic_edgeless(m):
    assert chromatic_polynomial(Graph(m)) == UniPoly.monomial(m)


def test_chromatic_k4_by_interpolation():
    G = complete_graph(4)
    oracle = lagrange_interpolate([(q, brute_colorings(G, q)) for q in range(1, 6)])
    assert oracle == UniPoly([0, -6, 11, -6, 1])
    assert chromatic_polynomial(G) == oracle


def test_chromatic_with_loop_is_zero():
    assert chromatic_polynomial(Graph(2, ((0, 1), (0, 0)))).is_zero()


def test_contraction_by_nothing():
    G = square_with_diagonal()
    assert contraction(G, []) == G


def test_triangle_contracted_by_one_edge():
    H = contraction(complete_graph(3), [0])
    assert H.vertex_count == 2
    assert sorted(tuple(sorted(e)) for e in H.edges) == [(0, 1), (0, 1)]


def random_graph(rng, n, m):
    return Graph(n, tuple((rng.randrange(n), rng.randrange(n)) for _ in range(m)))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(0, 8), st.data())
def test_contraction_component_identities(seed, n, m, data):
    G = random_graph(random.Random(seed), n, m)
    S = data.draw(st.sets(st.integers(0, m - 1))) if m else set()
    H = contraction(G, S)
    assert component_count(H) == component_count(G)
    assert H.vertex_count == component_count(restriction(G, S))
    assert restriction(G, S).edge_count == len(S)


def test_triangle_matroid():
    M = graphic_matroid(complete_graph(3))
    assert len(M) == 5 and M == uniform(2, 3)


def test_loop_edge_lies_in_every_flat():
    M = graphic_matroid(Graph(2, ((0, 0), (0, 1))))
    assert M.flats[M.bottom] == 0b01 and not M.loopless


def test_square_with_diagonal_flat_count():
    assert len(graphic_matroid(square_with_diagonal())) == 13


def test_graph_flats_are_closed():
    for G in corpus_graphs().values():
        for f in graph_flats(G):
            # an edge joining two vertices already connected inside f belongs to f
            comp = list(range(G.vertex_count))
            for e in elements_of(f):
                a, b = G.edges[e]
                ca, cb = comp[a], comp[b]
                comp = [ca if c == cb else c for c in comp]
            for e, (a, b) in enumerate(G.edges):
                if comp[a] == comp[b]:
                    assert f >> e & 1


def test_graph_rank_matches_matroid_rank():
    for G in corpus_graphs().values():
        M = graphic_matroid(G)
        for fid, f in enumerate(M.flats):
            assert graph_rank(G, elements_of(f)) == M.ranks[fid]


def test_join_examples():
    J = join([Graph(1), Graph(1)])
    assert J.vertex_count == 2 and J.edges == ((0, 1),)
    K = join([Graph(1), Graph(2, ((0, 1),))])
    assert K.vertex_count == 3 and K.edge_count == 3
    assert graphic_matroid(K) == graphic_matroid(complete_graph(3))
    assert is_connected(join([Graph(3), Graph(2)]))


def test_component_examples():
    assert component_count(Graph(3)) == 3
    assert is_connected(complete_graph(4))
    assert component_count(square_with_diagonal()) == 1
    assert component_count(Graph(2, ((0, 0),))) == 2


def test_chromatic_matches_coloring_counts():
    for G in corpus_graphs().values():
        p = chromatic_polynomial(G)
        for q in range(1, 6):
            assert p(q) == coloring_count(G, q) == brute_colorings(G, q)


def test_flat_contractions_sum_to_all_colorings():
    for G in corpus_graphs().values():
        total = UniPoly()
        for f in graph_flats(G):
            total = total + chromatic_polynomial(contraction(G, elements_of(f)))
        assert total == UniPoly.monomial(G.vertex_count)


def test_graph_minors_match_matroid_minors():
    for G in corpus_graphs().values():
        M = graphic_matroid(G)
        for fid, f in enumerate(M.flats):
            edges = elements_of(f)
            below, old_b = interval_minor(M, M.bottom, fid)
            assert graphic_matroid(restriction(G, edges)) == below
            assert old_b == tuple(edges)
            above, old_a = interval_minor(M, fid, M.top)
            assert graphic_matroid(contraction(G, edges)) == above
            assert old_a == tuple(e for e in range(G.edge_count) if not f >> e & 1)


def test_chromatic_signs_alternate():
    for G in corpus_graphs().values():
        p = chromatic_polynomial(G)
        n = G.vertex_count
        assert all((-1) ** (n - k) * p[k] >= 0 for k in range(n + 1))
