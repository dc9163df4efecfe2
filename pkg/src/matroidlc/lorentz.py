"""Certificates that Hessians of volume-polynomial derivatives have one positive eigenvalue."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .charpoly import characteristic_polynomial, reduced_characteristic_polynomial, sequence_checks
from .cone import AmplePoint, sample_ample
from .errors import (
    ConclusionFailed,
    HypothesisFailed,
    LoopyMatroid,
    NonPositiveRepresentative,
    PreconditionViolated,
    RankTooSmall,
)
from .graphs import Graph, join
from .linalg import SymMatrix
from .matroid import Matroid, direct_sum, flat_graph, interval_minor, uniform
from .polyalg import MultiPoly
from .spectral import Signature, is_irreducible, is_weakly_nonnegative, signature
from .unipoly import format_rational
from .volume import ChainContext, QuotientBasis, VolumeEngine, chain_product, mixed_degree
from .spectral import (  # noqa: F401  re-exported matrix tools
    downdate_check,
    perron,
    rayleigh,
    restricted_gram,
    signature_descartes,
    signature_ldl,
)


def matroid_hash(M: Matroid) -> str:
    text = json.dumps(M.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Certificate:
    kind: str
    hessian: SymMatrix
    signature: Signature
    passed: bool
    matroid_hash: str | None = None
    chain: tuple[int, ...] = ()
    inputs: dict = field(default_factory=dict)
    witness: str | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "matroid": self.matroid_hash,
            "chain": list(self.chain),
            "inputs": self.inputs,
            "signature": list(self.signature),
            "pass": self.passed,
            "witness": self.witness,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _fmt(vec: Sequence) -> list[str]:
    return [format_rational(x) for x in vec]


def _coords(x) -> tuple[Fraction, ...]:
    return tuple(x.coords) if hasattr(x, "coords") else tuple(Fraction(v) for v in x)


def _derive(f: MultiPoly, dirs: Sequence[Sequence[Fraction]]) -> MultiPoly:
    for d in dirs:
        f = f.directional_derivative(d)
    return f


def bootstrap_check(f: MultiPoly, x: Sequence, tol: float = 1e-9) -> Certificate:
    """Check the hypotheses of the Lorentzian bootstrap, then its conclusion.

    Raises HypothesisFailed when a hypothesis does not hold; a failed
    conclusion after all hypotheses pass raises ConclusionFailed.
    """
    d = f.homogeneous_degree()
    if d is None or d < 3:
        raise PreconditionViolated("f must be homogeneous of degree at least 3")
    x = [Fraction(v) for v in x]
    if len(x) != f.arity:
        raise PreconditionViolated("point has the wrong length")
    if any(v <= 0 for v in x):
        raise PreconditionViolated("point must be strictly positive")
    H = f.hessian_at(x)
    if not is_weakly_nonnegative(H):
        raise HypothesisFailed("Hessian has a negative off-diagonal entry")
    if not is_irreducible(H):
        raise HypothesisFailed("Hessian is reducible")
    grad = f.gradient_at(x)
    for i, g in enumerate(grad):
        if g <= 0:
            raise HypothesisFailed(f"partial derivative {i} is not positive", i)
    for i in range(f.arity):
        s = signature(f.differentiate(i).hessian_at(x))
        if s.p != 1:
            raise HypothesisFailed(f"Hessian of partial {i} has signature {tuple(s)}", i)
    sig = signature(H)
    if sig.p != 1:
        raise ConclusionFailed(f"Hessian has signature {tuple(sig)}")

    # auxiliary facts from the proof, with Λ = diag(x_i / v_i) and v = gradient
    lam = [xi / gi for xi, gi in zip(x, grad)]
    psd = _h_lam_h(H, lam) - H.scale(d - 1)
    psd_sig = signature(psd)
    if psd_sig.n != 0:
        raise ConclusionFailed("H Λ H - (d-1) H is not positive semidefinite")
    Hf = H.to_float()
    root = np.sqrt(np.array([float(v) for v in lam]))
    B = root[:, None] * Hf * root[None, :]
    w = np.array([float(v) for v in x]) / root
    resid = float(np.max(np.abs(B @ w - (d - 1) * w)))
    if resid > tol * max(1.0, float(np.max(np.abs(w))) * (d - 1)):
        raise ConclusionFailed(f"eigenvector identity residual {resid:.3e}")
    return Certificate(
        kind="bootstrap",
        hessian=H,
        signature=sig,
        passed=True,
        inputs={"x": _fmt(x), "degree": d},
        details={"eigen_residual": resid},
    )


def _h_lam_h(H: SymMatrix, lam: Sequence[Fraction]) -> SymMatrix:
    n = H.dim
    rows = H.entries
    return SymMatrix(
        [[sum((rows[i][k] * lam[k] * rows[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
    )


def _require_positive(points: Sequence) -> None:
    for k, p in enumerate(points):
        if not all(c > 0 for c in _coords(p)):
            raise NonPositiveRepresentative(f"point {k} has a non-positive coordinate")


def certify_lorentzian(
    M: Matroid,
    u: AmplePoint,
    dirs: Sequence[AmplePoint] = (),
    V: MultiPoly | None = None,
) -> Certificate:
    """Exact signature of H_u(D_{u_1}⋯D_{u_k} V_M) in the δ-basis."""
    if M.rank < 3 or len(dirs) > M.rank - 3:
        raise RankTooSmall(f"need k <= rank-3, got k={len(dirs)} at rank {M.rank}")
    _require_positive([u, *dirs])
    V = VolumeEngine(M).volume() if V is None else V
    g = _derive(V, [_coords(d) for d in dirs])
    point = _coords(u)
    H = g.hessian_at(point)
    sig = signature(H)
    dim_w = QuotientBasis(M).dim_w
    value = g.evaluate(point)
    passed = sig.p == 1
    return Certificate(
        kind="lorentzian",
        hessian=H,
        signature=sig,
        passed=passed,
        matroid_hash=matroid_hash(M),
        inputs={"u": _fmt(point), "dirs": [_fmt(_coords(d)) for d in dirs]},
        witness=None if passed else f"{sig.p} positive eigenvalues",
        details={"dim_w": dim_w, "value": format_rational(value), "zeros_cover_w": sig.z >= dim_w},
    )


def chain_graph(ctx: ChainContext) -> Graph:
    """Join of the flat graphs of the interval minors along the chain."""
    parts = [flat_graph(interval_minor(ctx.matroid, a, b)[0]) for a, b in ctx.bounds]
    return join(parts)


def sample_chain_point(ctx: ChainContext, seed: int) -> tuple[Fraction, ...]:
    """Concatenated positive ample representatives of every interval minor."""
    rng = random.Random(seed)
    coords: list[Fraction] = []
    for a, b in ctx.bounds:
        minor = interval_minor(ctx.matroid, a, b)[0]
        if len(minor) > 2:
            coords.extend(sample_ample(minor, rng.randrange(2**31)).coords)
    return tuple(coords)


def certify_chain(
    M: Matroid,
    chain: Sequence[int],
    u: Sequence,
    dirs: Sequence[Sequence] = (),
    engine: VolumeEngine | None = None,
    ctx: ChainContext | None = None,
) -> Certificate:
    """Positivity and one positive eigenvalue for derivatives of the chain product."""
    ctx = ctx or chain_product(M, chain, engine)
    f = ctx.poly
    deg = f.homogeneous_degree() or 0
    if len(dirs) > deg - 2:
        raise RankTooSmall(f"need k <= deg-2 = {deg - 2}, got {len(dirs)}")
    _require_positive([u, *dirs])
    g = _derive(f, [_coords(d) for d in dirs])
    point = _coords(u)
    value = g.evaluate(point)
    H = g.hessian_at(point)
    sig = signature(H)
    expected = chain_graph(ctx).adjacency()
    actual = {frozenset((i, j)) for i in range(H.dim) for j in range(i + 1, H.dim) if H[i, j]}
    graph_ok = expected == actual
    passed = sig.p == 1 and value > 0 and graph_ok
    witness = None
    if not passed:
        witness = f"p={sig.p}, value={format_rational(value)}, graph_match={graph_ok}"
    return Certificate(
        kind="chain",
        hessian=H,
        signature=sig,
        passed=passed,
        matroid_hash=matroid_hash(M),
        chain=ctx.chain,
        inputs={"u": _fmt(point), "dirs": [_fmt(_coords(d)) for d in dirs]},
        witness=witness,
        details={"value": format_rational(value), "graph_match": graph_ok},
    )


def hodge_2x2(
    M: Matroid, x, y, dirs: Sequence = (), V: MultiPoly | None = None
) -> tuple[SymMatrix, bool]:
    """The Gram matrix of the quadratic D_{dirs} V_M on x, y and whether det <= 0."""
    if len(dirs) != M.rank - 3:
        raise PreconditionViolated(f"need exactly rank-3 = {M.rank - 3} directions")
    V = VolumeEngine(M).volume() if V is None else V
    g = _derive(V, [_coords(d) for d in dirs])
    xs, ys = _coords(x), _coords(y)
    zero = [0] * g.arity
    gx = g.directional_derivative(xs)
    a = gx.directional_derivative(xs).evaluate(zero)
    if a <= 0:
        raise PreconditionViolated("D_x^2 of the quadratic is not positive")
    b = gx.directional_derivative(ys).evaluate(zero)
    c = g.directional_derivative(ys).directional_derivative(ys).evaluate(zero)
    G = SymMatrix([[a, b], [b, c]])
    return G, a * c - b * b <= 0


@dataclass(frozen=True)
class RHWReport:
    mu: tuple[int, ...]
    mu_reduced: tuple[int, ...] | None
    mu_volume: tuple[Fraction, ...] | None
    char_log_concave: bool
    reduced_log_concave: bool
    volume_matches: bool
    sum_matches: bool

    @property
    def passed(self) -> bool:
        return (
            self.char_log_concave
            and self.reduced_log_concave
            and self.volume_matches
            and self.sum_matches
        )

    def to_dict(self) -> dict:
        return {
            "mu": list(self.mu),
            "mu_reduced": None if self.mu_reduced is None else list(self.mu_reduced),
            "mu_volume": None if self.mu_volume is None else _fmt(self.mu_volume),
            "char_log_concave": self.char_log_concave,
            "reduced_log_concave": self.reduced_log_concave,
            "volume_matches": self.volume_matches,
            "sum_matches": self.sum_matches,
            "pass": self.passed,
        }


def verify_rhw(M: Matroid, V: MultiPoly | None = None) -> RHWReport:
    """Log-concavity of both coefficient sequences, computed two ways."""
    if not M.loopless:
        raise LoopyMatroid(f"loops {M.loops} present")
    chi = characteristic_polynomial(M)
    char_lc = sequence_checks(chi.mu).log_concave
    if M.rank == 0:
        return RHWReport(chi.mu, None, None, char_lc, True, True, True)
    red = reduced_characteristic_polynomial(M)
    V = VolumeEngine(M).volume() if V is None else V
    via_volume = tuple(mixed_degree(M, k, V=V) for k in range(M.rank))
    augmented = reduced_characteristic_polynomial(direct_sum(M, uniform(1, 1)))
    return RHWReport(
        mu=chi.mu,
        mu_reduced=red.mu,
        mu_volume=via_volume,
        char_log_concave=char_lc,
        reduced_log_concave=sequence_checks(red.mu).log_concave,
        volume_matches=via_volume == tuple(Fraction(m) for m in red.mu),
        sum_matches=augmented.poly == chi.poly,
    )
