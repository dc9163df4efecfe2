import random
from functools import cache
from fractions import Fraction

import pytest

from corpus import loopless_corpus
from matroidlc.charpoly import reduced_characteristic_polynomial
from matroidlc.errors import ElementOutOfRange, ImproperFlat, LoopyMatroid, RankOutOfRange
from matroidlc.graphs import Graph, graphic_matroid, square_with_diagonal
from matroidlc.matroid import interval_minor, maximal_chains, truncation, uniform
from matroidlc.polyalg import MultiPoly
from matroidlc.volume import (
    ClassVector,
    QuotientBasis,
    VolumeEngine,
    alpha_vector,
    beta_vector,
    chain_identity_holds,
    chain_product,
    delta_vector,
    flat_avoiding_representative,
    interval_projection,
    mixed_degree,
    n_coords,
    pos,
    projection_down,
    projection_up,
    volume_polynomial,
)


def ranked_corpus():
    return {k: M for k, M in loopless_corpus().items() if M.rank >= 1}


@cache
def volumes():
    return [(M, volume_polynomial(M)) for M in ranked_corpus().values()]


def minor_volume(M, lo, hi):
    """Volume of the interval minor built as a separate matroid."""
    minor, _ = interval_minor(M, lo, hi)
    if minor.rank == 0:
        return MultiPoly(n_coords(minor))
    return volume_polynomial(minor)


def test_alpha_beta_examples():
    M = uniform(2, 3)
    one = M.flat_id([0])
    assert alpha_vector(M, 0) == ClassVector(M, delta_vector(M, one).coords, "alpha0")
    expected = delta_vector(M, M.flat_id([1])) + delta_vector(M, M.flat_id([2]))
    assert beta_vector(M, 0).coords == expected.coords


def test_alpha_plus_beta_is_all_ones():
    for M in ranked_corpus().values():
        for i in range(M.ground_size):
            s = alpha_vector(M, i) + beta_vector(M, i)
            assert all(c == 1 for c in s.coords)


def test_element_errors():
    with pytest.raises(ElementOutOfRange):
        alpha_vector(uniform(2, 3), 3)
    loopy = graphic_matroid(Graph(2, ((0, 0), (0, 1))))
    with pytest.raises(ElementOutOfRange):
        beta_vector(loopy, 0)


def test_improper_flat_projection():
    M = uniform(3, 4)
    with pytest.raises(ImproperFlat):
        projection_up(M, M.bottom)
    with pytest.raises(ImproperFlat):
        projection_down(M, M.top)


def test_alpha_beta_projections():
    for M in ranked_corpus().values():
        if M.rank < 2:
            continue
        for F in M.proper_flats():
            up, _ = interval_minor(M, M.bottom, F)
            down, _ = interval_minor(M, F, M.top)
            Pu, Pd = projection_up(M, F), projection_down(M, F)
            Qu, Qd = QuotientBasis(up), QuotientBasis(down)
            for i in range(M.ground_size):
                a, b = alpha_vector(M, i).coords, beta_vector(M, i).coords
                assert Qu.contains(Pu.apply(a))
                assert Qd.contains(Pd.apply(b))
                if down.rank >= 1:
                    target = alpha_vector(down, 0).coords
                    assert Qd.contains([x - y for x, y in zip(Pd.apply(a), target)])
                if up.rank >= 1:
                    target = beta_vector(up, 0).coords
                    assert Qu.contains([x - y for x, y in zip(Pu.apply(b), target)])


def test_mixed_projections_commute():
    rng = random.Random(7)
    for M in ranked_corpus().values():
        for F in M.proper_flats():
            for G in M.proper_flats():
                if F == G or not M.leq(F, G):
                    continue
                # restrict to G, then contract F inside the restriction
                upper, old_u = interval_minor(M, M.bottom, G)
                F_in_upper = upper.flat_id([old_u.index(e) for e in M.members(F)])
                A = interval_projection(upper, F_in_upper, upper.top) @ projection_up(M, G)
                # contract F, then restrict to G inside the contraction
                lower, old_l = interval_minor(M, F, M.top)
                G_in_lower = lower.flat_id([old_l.index(e) for e in M.members(G) if e in old_l])
                B = interval_projection(lower, lower.bottom, G_in_lower) @ projection_down(M, F)
                direct = interval_projection(M, F, G)
                target, _ = interval_minor(M, F, G)
                Q = QuotientBasis(target)
                for _ in range(3):
                    t = [Fraction(rng.randint(-5, 5)) for _ in range(n_coords(M))]
                    a, b, c = A.apply(t), B.apply(t), direct.apply(t)
                    assert Q.contains([x - y for x, y in zip(a, b)])
                    assert Q.contains([x - y for x, y in zip(a, c)])


def test_rank_two_volume_is_sum():
    for M in ranked_corpus().values():
        if M.rank == 2:
            V = volume_polynomial(M)
            assert V == MultiPoly.linear(n_coords(M), [1] * n_coords(M))


def test_rank_three_closed_form():
    for M in ranked_corpus().values():
        if M.rank != 3:
            continue
        V = volume_polynomial(M)
        rank2 = [f for f in M.proper_flats() if M.ranks[f] == 2]
        rng = random.Random(len(M))
        for _ in range(3):
            t1 = Fraction(rng.randint(-4, 4))
            tg = {g: Fraction(rng.randint(-4, 4)) for g in rank2}
            point = [t1 * a for a in alpha_vector(M, 0).coords]
            for g, v in tg.items():
                point[pos(g)] += v
            assert V.evaluate(point) == Fraction(1, 2) * (t1**2 - sum(v * v for v in tg.values()))


def test_maximal_chain_derivative_is_one():
    for M, V in volumes():
        for chain in list(maximal_chains(M, M.bottom, M.top))[:10]:
            g = V
            for f in chain[1:-1]:
                g = g.differentiate(pos(f))
            assert g == MultiPoly.constant(V.arity, 1)


def test_loopy_and_rank_zero():
    with pytest.raises(LoopyMatroid):
        volume_polynomial(graphic_matroid(Graph(2, ((0, 0), (0, 1)))))
    assert volume_polynomial(uniform(0, 0)).is_zero()
    assert volume_polynomial(uniform(1, 3)) == MultiPoly.constant(0, 1)


def test_partials_factor_through_separate_minors():
    # D_F V equals V(restriction)∘π^F times V(contraction)∘π_F, with each
    # minor built and its volume computed as a matroid of its own
    for M, V in volumes():
        if M.rank < 2:
            continue
        for F in M.proper_flats():
            up = minor_volume(M, M.bottom, F).substitute_linear(projection_up(M, F))
            down = minor_volume(M, F, M.top).substitute_linear(projection_down(M, F))
            assert V.differentiate(pos(F)) == up * down


def test_volume_is_homogeneous():
    for M, V in volumes():
        if M.rank >= 2:
            assert V.homogeneous_degree() == M.rank - 1


def test_alpha_derivative_independent_of_element():
    for M, V in volumes():
        base = V.directional_derivative(alpha_vector(M, 0).coords)
        for i in range(1, M.ground_size):
            assert V.directional_derivative(alpha_vector(M, i).coords) == base


def test_volume_invariant_under_w():
    for M, V in volumes():
        Q = QuotientBasis(M)
        if not Q.spanning:
            continue
        rng = random.Random(3)
        t = [Fraction(rng.randint(-3, 3)) for _ in range(n_coords(M))]
        for w in Q.spanning:
            assert V.evaluate([a + b for a, b in zip(t, w)]) == V.evaluate(t)


def test_mixed_partials_commute_and_vanish_when_incomparable():
    for M, V in volumes():
        flats = list(M.proper_flats())
        for F in flats:
            dF = V.differentiate(pos(F))
            for G in flats:
                if G <= F:
                    continue
                dFG = dF.differentiate(pos(G))
                assert dFG == V.differentiate(pos(G)).differentiate(pos(F))
                if not (M.leq(F, G) or M.leq(G, F)):
                    assert dFG.is_zero()


def test_truncation_restriction():
    for M, V in volumes():
        if M.rank < 3:
            continue
        T = truncation(M, 1)
        g = V.directional_derivative(alpha_vector(M, 0).coords)
        zero_on = {pos(f): MultiPoly(n_coords(T)) for f in M.proper_flats() if M.ranks[f] == M.rank - 1}
        images = dict(zero_on)
        for f in M.proper_flats():
            if M.ranks[f] < M.rank - 1:
                images[pos(f)] = MultiPoly.variable(n_coords(T), pos(T.index[M.flats[f]]))
        assert g.substitute(images, n_coords(T)) == volume_polynomial(T)


def test_mixed_degree_examples():
    M = uniform(2, 3)
    assert mixed_degree(M, 0) == 1 and mixed_degree(M, 1) == 2
    M = uniform(3, 4)
    assert [mixed_degree(M, k) for k in range(3)] == [1, 3, 3]
    with pytest.raises(RankOutOfRange):
        mixed_degree(M, 3)


def test_mixed_degree_matches_reduced_charpoly_two_elements():
    for M, V in volumes():
        mu = reduced_characteristic_polynomial(M).mu
        for element in {0, M.ground_size - 1}:
            assert tuple(mixed_degree(M, k, element, V) for k in range(M.rank)) == mu


def test_flat_avoiding_examples():
    M = uniform(3, 4)
    F = M.flat_id([0])
    Q = QuotientBasis(M)
    u = delta_vector(M, F)
    v = flat_avoiding_representative(u, [F])
    assert v[F] == 0 and Q.same_class(u, v)
    G = M.flat_id([1, 2])
    w = delta_vector(M, G)
    assert flat_avoiding_representative(w, [F]).coords == w.coords


def test_flat_avoiding_random():
    rng = random.Random(11)
    for M in ranked_corpus().values():
        if M.rank < 2:
            continue
        Q = QuotientBasis(M)
        chains = list(maximal_chains(M, M.bottom, M.top))
        for _ in range(3):
            chain = rng.choice(chains)[1:-1]
            chain = [f for f in chain if rng.random() < 0.7]
            u = ClassVector(M, tuple(Fraction(rng.randint(-5, 5)) for _ in range(n_coords(M))))
            v = flat_avoiding_representative(u, chain)
            assert Q.same_class(u, v)
            assert all(v[f] == 0 for f in chain)


def test_quotient_dimensions():
    M = uniform(2, 3)
    Q = QuotientBasis(M)
    assert Q.dim_w == 2 and Q.dim_l == 1
    M = graphic_matroid(square_with_diagonal())
    Q = QuotientBasis(M)
    assert Q.dim_w + Q.dim_l == 11


def test_chain_product_examples():
    M = uniform(3, 4)
    engine = VolumeEngine(M)
    ctx = chain_product(M, [], engine)
    assert ctx.poly == engine.volume()
    chain = list(maximal_chains(M, M.bottom, M.top))[0][1:-1]
    assert chain_product(M, chain, engine).poly == MultiPoly.constant(0, 1)
    F = M.flat_id([0])
    ctx = chain_product(M, [F], engine)
    assert ctx.poly.homogeneous_degree() == 1
    assert chain_identity_holds(M, [F], engine)
    direct = engine.volume().differentiate(pos(F))
    assert direct == ctx.poly.substitute_linear(ctx.projection)


def test_chain_identity_on_corpus():
    rng = random.Random(5)
    for M, V in volumes():
        if M.rank < 2:
            continue
        engine = VolumeEngine(M)
        chains = list(maximal_chains(M, M.bottom, M.top))
        for _ in range(2):
            chain = [f for f in rng.choice(chains)[1:-1] if rng.random() < 0.5]
            assert chain_identity_holds(M, chain, engine)
