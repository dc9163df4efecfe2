"""Command-line front end.  Exit codes: 0 pass, 2 failed check, 1 error."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import charpoly as cp
from . import cone, graphs, lorentz, matroid, spectral, volume
from .errors import MatroidLCError, RankTooSmall
from .formats import (
    load_ffmatrix,
    load_graph,
    load_matroid,
    load_symmatrix,
    parse_rational,
    read_source,
)
from .unipoly import format_poly, format_rational

EXIT_PASS, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


@dataclass
class Config:
    max_flats: int = 4096
    max_ground: int = matroid.MAX_GROUND
    coloring_budget: int = graphs.COLORING_BUDGET
    seed: int = 0
    eps: list[Fraction] = field(default_factory=list)
    structured: bool = False

    def __post_init__(self) -> None:
        if min(self.max_flats, self.max_ground, self.coloring_budget) <= 0:
            raise MatroidLCError("size caps must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit with 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _load_input(args, cfg: Config):
    """Return (matroid, graph or None) for flats files, edge lists or ``uniform:R,N``."""
    if args.input.startswith("uniform:"):
        r, n = (int(x) for x in args.input.split(":", 1)[1].split(","))
        return matroid.uniform(r, n), None
    text = read_source(args.input)
    if args.format == "graph":
        G = load_graph(text)
        return graphs.graphic_matroid(G, cfg.max_flats), G
    if args.format == "ffmatrix":
        p, rows = load_ffmatrix(text)
        return cp.arrangement_matroid(rows, p), None
    return load_matroid(text, cfg.max_flats), None


class Output:
    def __init__(self, cfg: Config):
        self.cfg = cfg
        self.data: dict = {}

    def put(self, key: str, value, text: str | None = None) -> None:
        self.data[key] = value
        if not self.cfg.structured:
            print(f"{key}: {text if text is not None else value}")

    def flush(self) -> None:
        if self.cfg.structured:
            print(json.dumps(self.data, sort_keys=True))


def _seq(values) -> str:
    return " ".join(format_rational(v) for v in values)


def cmd_check(args, cfg, out: Output) -> int:
    M, _ = _load_input(args, cfg)
    out.put("ground", M.ground_size)
    out.put("flats", len(M))
    out.put("rank", M.rank)
    out.put("loopless", M.loopless)
    return EXIT_PASS


def cmd_charpoly(args, cfg, out: Output) -> int:
    M, _ = _load_input(args, cfg)
    chi = cp.characteristic_polynomial(M)
    out.put("charpoly", format_poly(chi.poly))
    out.put("mu", list(chi.mu), _seq(chi.mu))
    if M.loopless and M.rank >= 1:
        red = cp.reduced_characteristic_polynomial(M)
        out.put("reduced", format_poly(red.poly))
        out.put("mu_reduced", list(red.mu), _seq(red.mu))
    return EXIT_PASS


def cmd_chromatic(args, cfg, out: Output) -> int:
    args.format = "graph"
    M, G = _load_input(args, cfg)
    if G is None:
        raise MatroidLCError("chromatic needs an edge list")
    P = graphs.chromatic_polynomial(G)
    out.put("chromatic", format_poly(P))
    mags = [abs(P[k]) for k in range(P.degree, -1, -1)] if not P.is_zero() else [0]
    out.put("coefficients", mags, _seq(mags))
    out.put("relation_holds", cp.chromatic_relation_check(G))
    return EXIT_PASS


def cmd_volume(args, cfg, out: Output) -> int:
    M, _ = _load_input(args, cfg)
    V = volume.volume_polynomial(M)
    out.put("degree", V.homogeneous_degree())
    out.put("terms", len(V))
    out.put("volume", V.format(volume.volume_flat_names(M)))
    return EXIT_PASS


def cmd_mixed(args, cfg, out: Output) -> int:
    M, _ = _load_input(args, cfg)
    V = volume.volume_polynomial(M)
    vals = [volume.mixed_degree(M, k, V=V) for k in range(M.rank)]
    out.put("mixed", [format_rational(v) for v in vals], _seq(vals))
    return EXIT_PASS


def _ks(args, top: int) -> list[int]:
    return [args.k] if args.k is not None else list(range(top + 1))


def cmd_certify(args, cfg, out: Output) -> int:
    M, _ = _load_input(args, cfg)
    V = volume.volume_polynomial(M)
    if M.rank < 3:
        raise RankTooSmall(f"certification needs rank at least 3, got {M.rank}")
    u = cone.sample_ample(M, cfg.seed)
    ok = True
    certs = []
    for k in _ks(args, M.rank - 3):
        dirs = [cone.sample_ample(M, cfg.seed + 1 + j) for j in range(k)]
        cert = lorentz.certify_lorentzian(M, u, dirs, V=V)
        ok &= cert.passed
        certs.append(cert.to_dict())
        if not cfg.structured:
            s = cert.signature
            print(f"k={k}: signature p={s.p} n={s.n} z={s.z} {'PASS' if cert.passed else 'FAIL'}")
    out.data["certificates"] = certs
    out.put("result", "PASS" if ok else "FAIL")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_certify_chain(args, cfg, out: Output) -> int:
    M, _ = _load_input(args, cfg)
    if not args.chain:
        raise MatroidLCError("--chain is required")
    chain = [int(x) for x in args.chain.split(",") if x.strip()]
    ctx = volume.chain_product(M, chain)
    u = lorentz.sample_chain_point(ctx, cfg.seed)
    k = args.k or 0
    dirs = [lorentz.sample_chain_point(ctx, cfg.seed + 1 + j) for j in range(k)]
    cert = lorentz.certify_chain(M, chain, u, dirs, ctx=ctx)
    s = cert.signature
    out.data["certificate"] = cert.to_dict()
    out.put("signature", list(s), f"p={s.p} n={s.n} z={s.z}")
    out.put("result", "PASS" if cert.passed else "FAIL")
    return EXIT_PASS if cert.passed else EXIT_FAIL


def cmd_hodge(args, cfg, out: Output) -> int:
    M, _ = _load_input(args, cfg)
    V = volume.volume_polynomial(M)
    dirs = [cone.sample_ample(M, cfg.seed + 2 + j) for j in range(M.rank - 3)]
    pairs = []
    if cfg.eps:
        i = volume.first_nonloop(M)
        pairs = [(cone.approach_alpha(M, i, e), cone.approach_beta(M, i, e)) for e in cfg.eps]
    else:
        pairs = [(cone.sample_ample(M, cfg.seed), cone.sample_ample(M, cfg.seed + 1))]
    ok = True
    rows = []
    for x, y in pairs:
        G, holds = lorentz.hodge_2x2(M, x, y, dirs, V=V)
        ok &= holds
        a, b, c = G[0, 0], G[0, 1], G[1, 1]
        rows.append({"matrix": [[format_rational(a), format_rational(b)], [format_rational(b), format_rational(c)]],
                     "det": format_rational(a * c - b * b), "holds": holds})
        if not cfg.structured:
            print(f"[[{format_rational(a)}, {format_rational(b)}], [{format_rational(b)}, {format_rational(c)}]] "
                  f"det={format_rational(a * c - b * b)}")
    out.data["hodge"] = rows
    out.put("result", "PASS" if ok else "FAIL")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_rhw(args, cfg, out: Output) -> int:
    M, G = _load_input(args, cfg)
    if G is not None:
        out.put("chromatic", format_poly(graphs.chromatic_polynomial(G)))
    rep = lorentz.verify_rhw(M)
    d = rep.to_dict()
    out.put("mu", d["mu"], _seq(rep.mu))
    if rep.mu_reduced is not None:
        out.put("mu_reduced", d["mu_reduced"], _seq(rep.mu_reduced))
        out.put("mu_volume", d["mu_volume"], _seq(rep.mu_volume))
    for key in ("char_log_concave", "reduced_log_concave", "volume_matches", "sum_matches"):
        out.put(key, d[key])
    out.put("result", "PASS" if rep.passed else "FAIL")
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_ffcount(args, cfg, out: Output) -> int:
    p, rows = load_ffmatrix(read_source(args.input))
    ok = True
    results = []
    for b in args.b or [1, 2]:
        M, count = cp.finite_field_count(rows, p, b)
        kappa = len(rows[0]) - M.rank
        expected = p ** (b * kappa) * cp.characteristic_polynomial(M).poly(p**b)
        ok &= count == expected
        results.append({"b": b, "count": count, "expected": expected})
        if not cfg.structured:
            print(f"b={b}: count={count} expected={expected}")
    out.data["counts"] = results
    out.put("result", "PASS" if ok else "FAIL")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_pf(args, cfg, out: Output) -> int:
    A = load_symmatrix(read_source(args.input))
    lam, v, simple = spectral.perron(A)
    out.put("lambda", repr(lam))
    out.put("vector", [repr(float(x)) for x in v], " ".join(f"{x:.12g}" for x in v))
    out.put("simple", simple)
    return EXIT_PASS if simple else EXIT_FAIL


COMMANDS = {
    "check": (cmd_check, "validate a lattice of flats"),
    "charpoly": (cmd_charpoly, "characteristic and reduced characteristic polynomials"),
    "chromatic": (cmd_chromatic, "chromatic polynomial of an edge list"),
    "volume": (cmd_volume, "volume polynomial"),
    "mixed": (cmd_mixed, "mixed degrees D_alpha^(r-k) D_beta^k V for every k"),
    "certify": (cmd_certify, "one-positive-eigenvalue certificates at seeded ample points"),
    "certify-chain": (cmd_certify_chain, "certificate for the product along a chain of flats"),
    "hodge": (cmd_hodge, "2x2 Hodge-type determinant test"),
    "rhw": (cmd_rhw, "log-concavity report"),
    "ffcount": (cmd_ffcount, "finite-field point count of an arrangement"),
    "pf": (cmd_pf, "Perron-Frobenius data of a symmetric matrix file"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="matroidlc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("input", help="input file, '-' for stdin, or uniform:R,N")
        p.add_argument("--format", choices=["flats", "graph", "ffmatrix"], default="flats",
                       help="input format (default: flats)")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled ample points (default: 0)")
        p.add_argument("--eps", type=parse_rational, action="append", default=[],
                       help="epsilon p/q for approach points; repeatable")
        p.add_argument("--max-flats", type=int, default=4096, help="flat count cap (default: 4096)")
        p.add_argument("--json", action="store_true", help="structured output")
        p.add_argument("--k", type=int, default=None, help="number of derivative directions")
        p.add_argument("--chain", default=None, help="comma-separated flat ids")
        p.add_argument("--b", type=int, action="append", default=None,
                       help="field extension degree for ffcount; repeatable (default: 1 and 2)")
    return parser


def run(command: str, argv: Sequence[str]) -> int:
    return main([command, *argv])


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = Config(max_flats=args.max_flats, seed=args.seed, eps=list(args.eps), structured=args.json)
        out = Output(cfg)
        code = COMMANDS[args.command][0](args, cfg, out)
        out.flush()
        return code
    except (MatroidLCError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
