import json
import random
from fractions import Fraction
from functools import cache

import pytest

from corpus import loopless_corpus
from matroidlc.charpoly import reduced_characteristic_polynomial
from matroidlc.cone import approach_alpha, approach_beta, canonical_ample, sample_ample
from matroidlc.errors import (
    HypothesisFailed,
    LoopyMatroid,
    NonPositiveRepresentative,
    PreconditionViolated,
    RankTooSmall,
)
from matroidlc.graphs import Graph, graphic_matroid, complete_graph, square_with_diagonal
from matroidlc.linalg import SymMatrix
from matroidlc.lorentz import (
    Certificate,
    bootstrap_check,
    certify_chain,
    certify_lorentzian,
    chain_graph,
    hodge_2x2,
    matroid_hash,
    sample_chain_point,
    verify_rhw,
)
from matroidlc.matroid import uniform
from matroidlc.polyalg import MultiPoly
from matroidlc.spectral import signature
from matroidlc.volume import QuotientBasis, VolumeEngine, chain_product, volume_polynomial


def var(n, i):
    return MultiPoly.variable(n, i)


def linear_product(rng, n, d):
    """Product of d linear forms with positive integer coefficients."""
    f = MultiPoly.constant(n, 1)
    for _ in range(d):
        f = f * MultiPoly.linear(n, [rng.randint(1, 4) for _ in range(n)])
    return f


def negsemi_matrix(f, x):
    """d f(x) H_x f - (d-1) ∇f ∇fᵀ."""
    d = f.homogeneous_degree()
    H = f.hessian_at(x)
    g = f.gradient_at(x)
    n, scale = len(x), d * f.evaluate(x)
    return SymMatrix([[scale * H[i, j] - (d - 1) * g[i] * g[j] for j in range(n)] for i in range(n)])


@cache
def rank_four_volumes():
    return [(M, volume_polynomial(M)) for M in loopless_corpus().values() if M.rank >= 4][::3]


def test_bootstrap_on_triple_product():
    f = var(3, 0) * var(3, 1) * var(3, 2)
    cert = bootstrap_check(f, [1, 1, 1])
    assert cert.passed and cert.signature == (1, 2, 0)
    assert cert.hessian == SymMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])


def test_bootstrap_on_cube():
    x = var(1, 0)
    cert = bootstrap_check(x**3, [1])
    assert cert.signature == (1, 0, 0)


def test_bootstrap_preconditions():
    x0, x1 = var(2, 0), var(2, 1)
    with pytest.raises(PreconditionViolated):
        bootstrap_check(x0 * x1, [1, 1])
    with pytest.raises(PreconditionViolated):
        bootstrap_check(x0 * x1 * x1, [1, 0])
    with pytest.raises(PreconditionViolated):
        bootstrap_check(x0 * x1 + x0, [1, 1])


def test_bootstrap_reports_failed_hypothesis():
    x0, x1 = var(2, 0), var(2, 1)
    # x0^3 + x1^3 has a diagonal Hessian: reducible
    with pytest.raises(HypothesisFailed):
        bootstrap_check(x0**3 + x1**3, [1, 1])
    # x0^2 x1 - x1^3 at (1, 2): the Hessian is fine but the x1 partial is -11
    with pytest.raises(HypothesisFailed) as info:
        bootstrap_check(x0 * x0 * x1 - x1**3, [1, 2])
    assert info.value.index == 1


@pytest.mark.parametrize("seed", range(10))
def test_bootstrap_on_linear_products(seed):
    rng = random.Random(seed)
    n, d = rng.randint(2, 4), rng.randint(3, 4)
    f = linear_product(rng, n, d)
    x = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(n)]
    cert = bootstrap_check(f, x)
    assert cert.signature.p == 1
    assert signature(f.hessian_at(x)).p == 1


def test_bootstrap_on_volume_polynomials():
    for M, V in rank_four_volumes():
        cert = bootstrap_check(V, sample_ample(M, 0).coords)
        assert cert.passed and cert.signature.p == 1


@pytest.mark.parametrize("seed", range(20))
def test_c_matrix_is_negative_semidefinite(seed):
    rng = random.Random(seed)
    n, d = rng.randint(2, 4), rng.randint(2, 4)
    f = linear_product(rng, n, d)
    x = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(n)]
    assert signature(f.hessian_at(x)).p == 1 and f.evaluate(x) > 0
    C = negsemi_matrix(f, x)
    assert signature(C).p == 0
    # x lies in the kernel
    assert C.matvec(x) == (0,) * n


def test_c_matrix_on_volume_polynomials():
    for M, V in rank_four_volumes():
        x = sample_ample(M, 1).coords
        assert signature(negsemi_matrix(V, x)).p == 0


def test_c_matrix_needs_positive_value():
    # with f(x) < 0 the conclusion can fail: f = (x0^2 - x1^2 - x2^2)/2 at (1,1,1)
    f = (var(3, 0) ** 2 - var(3, 1) ** 2 - var(3, 2) ** 2).scale(Fraction(1, 2))
    x = [1, 1, 1]
    assert signature(f.hessian_at(x)).p == 1 and f.evaluate(x) < 0
    assert signature(negsemi_matrix(f, x)).p == 1


def test_certify_rank_three_canonical():
    for M in loopless_corpus().values():
        if M.rank == 3:
            cert = certify_lorentzian(M, canonical_ample(M))
            assert cert.passed and cert.signature.p == 1


def test_certify_u45_with_one_direction():
    M = uniform(4, 5)
    cert = certify_lorentzian(M, sample_ample(M, 0), [sample_ample(M, 1)])
    assert cert.passed and cert.signature.p == 1
    assert cert.details["zeros_cover_w"]


def test_certify_k4():
    M = graphic_matroid(complete_graph(4))
    cert = certify_lorentzian(M, sample_ample(M, 0))
    assert cert.passed and cert.signature.p == 1


def test_certify_errors():
    with pytest.raises(RankTooSmall):
        certify_lorentzian(uniform(2, 3), canonical_ample(uniform(2, 3)))
    M = uniform(3, 4)
    with pytest.raises(RankTooSmall):
        certify_lorentzian(M, sample_ample(M, 0), [sample_ample(M, 1)])
    with pytest.raises(NonPositiveRepresentative):
        certify_lorentzian(M, [0] * len(sample_ample(M, 0).coords))


def test_certify_zeros_cover_w():
    for M in list(loopless_corpus().values())[::4]:
        if M.rank < 3:
            continue
        V = volume_polynomial(M)
        cert = certify_lorentzian(M, sample_ample(M, 2), V=V)
        dim_w = QuotientBasis(M).dim_w
        assert cert.details["dim_w"] == dim_w
        assert cert.signature.z >= dim_w
        assert Fraction(cert.details["value"]) > 0


def test_certificate_serialization_is_stable():
    M = uniform(3, 4)
    a = certify_lorentzian(M, sample_ample(M, 5))
    b = certify_lorentzian(uniform(3, 4), sample_ample(uniform(3, 4), 5))
    assert a.to_json() == b.to_json()
    data = json.loads(a.to_json())
    assert data["signature"] == list(a.signature) and data["pass"] is True
    assert data["matroid"] == matroid_hash(M)
    assert isinstance(a, Certificate)


def test_matroid_hash_distinguishes():
    assert matroid_hash(uniform(3, 4)) != matroid_hash(uniform(3, 5))


def test_chain_degree_two_product():
    # a rank-2 flat of U_{4,4} cuts V into a product of two linear sums
    M = uniform(4, 4)
    F = M.flat_id([0, 1])
    ctx = chain_product(M, [F])
    assert ctx.poly.homogeneous_degree() == 2
    u = sample_chain_point(ctx, 0)
    cert = certify_chain(M, [F], u, ctx=ctx)
    assert cert.passed and cert.signature.p == 1
    sizes = [len(b) for b in ctx.blocks]
    H = cert.hessian
    for i in range(H.dim):
        for j in range(H.dim):
            same = (i < sizes[0]) == (j < sizes[0])
            assert H[i, j] == (0 if same else 1)


def test_product_of_two_variables():
    f = var(2, 0) * var(2, 1)
    assert f.hessian_at([1, 1]) == SymMatrix([[0, 1], [1, 0]])
    assert signature(f.hessian_at([1, 1])) == (1, 1, 0)


def test_empty_chain_matches_lorentzian():
    M = uniform(4, 5)
    engine = VolumeEngine(M)
    u = sample_ample(M, 3)
    a = certify_chain(M, [], u.coords, engine=engine)
    b = certify_lorentzian(M, u, V=engine.volume())
    assert a.hessian == b.hessian and a.signature == b.signature and a.passed == b.passed


def test_chain_graph_match_u45():
    M = uniform(4, 5)
    F = M.flat_id([0, 1])
    ctx = chain_product(M, [F])
    G = chain_graph(ctx)
    assert G.vertex_count == len(ctx.variables)
    # both intervals have rank 2, so f has degree 2 and takes no directions
    for k in range(3):
        cert = certify_chain(M, [F], sample_chain_point(ctx, k), ctx=ctx)
        assert cert.passed and cert.details["graph_match"]
    # one direction needs degree 3, i.e. rank 5
    N = uniform(5, 6)
    G = N.flat_id([0, 1])
    ctx = chain_product(N, [G])
    cert = certify_chain(N, [G], sample_chain_point(ctx, 0), [sample_chain_point(ctx, 1)], ctx=ctx)
    assert cert.passed and cert.details["graph_match"]


def test_chain_too_many_directions():
    M = uniform(4, 4)
    F = M.flat_id([0, 1])
    ctx = chain_product(M, [F])
    with pytest.raises(RankTooSmall):
        certify_chain(M, [F], sample_chain_point(ctx, 0), [sample_chain_point(ctx, 1)], ctx=ctx)


def test_chain_point_positive():
    M = uniform(5, 6)
    ctx = chain_product(M, [M.flat_id([0])])
    u = sample_chain_point(ctx, 4)
    assert len(u) == len(ctx.variables) and all(c > 0 for c in u)


def test_hodge_parallel_vectors():
    M = uniform(3, 4)
    x = sample_ample(M, 0)
    G, holds = hodge_2x2(M, x, x.vector.scale(3))
    assert holds and G[0, 0] * G[1, 1] == G[0, 1] ** 2


def test_hodge_alpha_beta_approach():
    M = uniform(3, 4)
    eps = Fraction(1, 2)
    G, holds = hodge_2x2(M, approach_alpha(M, 0, eps), approach_beta(M, 0, eps))
    assert holds and G[0, 0] > 0


def test_hodge_random_ample():
    for M in list(loopless_corpus().values())[::3]:
        if M.rank < 3:
            continue
        V = volume_polynomial(M)
        for seed in range(3):
            dirs = [sample_ample(M, 100 + seed + j) for j in range(M.rank - 3)]
            _, holds = hodge_2x2(M, sample_ample(M, seed), sample_ample(M, seed + 50), dirs, V)
            assert holds


def test_hodge_preconditions():
    M = uniform(4, 5)
    with pytest.raises(PreconditionViolated):
        hodge_2x2(M, sample_ample(M, 0), sample_ample(M, 1))
    N = uniform(3, 4)
    zero = [0] * len(sample_ample(N, 0).coords)
    with pytest.raises(PreconditionViolated):
        hodge_2x2(N, zero, sample_ample(N, 1))


def test_rhw_square_with_diagonal():
    rep = verify_rhw(graphic_matroid(square_with_diagonal()))
    assert rep.passed
    assert rep.mu == (1, 5, 8, 4)


def test_rhw_u34():
    rep = verify_rhw(uniform(3, 4))
    assert rep.passed and rep.mu_reduced == (1, 3, 3)
    assert rep.mu_reduced[0] * rep.mu_reduced[2] <= rep.mu_reduced[1] ** 2


def test_rhw_boolean():
    from math import comb

    for n in range(1, 6):
        rep = verify_rhw(uniform(n, n))
        assert rep.passed
        assert rep.mu == tuple(comb(n, k) for k in range(n + 1))


def test_rhw_rank_zero_and_loops():
    assert verify_rhw(uniform(0, 0)).passed
    with pytest.raises(LoopyMatroid):
        verify_rhw(graphic_matroid(Graph(2, ((0, 0), (0, 1)))))


def test_rhw_report_dict():
    rep = verify_rhw(uniform(3, 5))
    d = rep.to_dict()
    assert d["pass"] and d["mu_reduced"] == list(reduced_characteristic_polynomial(uniform(3, 5)).mu)
    assert d["mu_volume"] == [str(m) for m in d["mu_reduced"]]
