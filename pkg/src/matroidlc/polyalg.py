"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable,
with positive exponents only.  Volume polynomials live in several dozen
variables but each monomial touches only a handful, so this beats dense
exponent vectors by a wide margin.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ArityMismatch
from .linalg import LinearMap, SymMatrix

Monomial = tuple[tuple[int, int], ...]
ONE: Monomial = ()


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class MultiPoly:
    __slots__ = ("arity", "terms", "_degree")

    def __init__(self, arity: int, terms: Mapping[Monomial, Fraction] | None = None, *, _clean: bool = False):
        self.arity = arity
        if terms is None:
            self.terms: dict[Monomial, Fraction] = {}
        elif _clean:
            self.terms = dict(terms)
        else:
            self.terms = {m: _frac(c) for m, c in terms.items() if c}
            for m in self.terms:
                if any(not 0 <= v < arity or e <= 0 for v, e in m):
                    raise ArityMismatch(f"monomial {m} does not fit arity {arity}")
        self._degree: int | None | bool = False

    # construction

    @classmethod
    def constant(cls, arity: int, c=1) -> "MultiPoly":
        return cls(arity, {ONE: c})

    @classmethod
    def variable(cls, arity: int, v: int) -> "MultiPoly":
        if not 0 <= v < arity:
            raise ArityMismatch(f"variable {v} outside arity {arity}")
        return cls(arity, {((v, 1),): 1}, _clean=True)

    @classmethod
    def linear(cls, arity: int, coeffs: Mapping[int, Fraction] | Sequence) -> "MultiPoly":
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        return cls(arity, {((v, 1),): c for v, c in items if c})

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.arity, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono_degree(m) for m in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """The common degree of all monomials, or ``None`` if they differ."""
        if self._degree is False:
            degs = {mono_degree(m) for m in self.terms}
            self._degree = degs.pop() if len(degs) == 1 else None
        return self._degree  # type: ignore[return-value]

    def is_homogeneous(self) -> bool:
        return self.is_zero() or self.homogeneous_degree() is not None

    def variables(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def coefficient(self, exponents: Mapping[int, int] | Sequence[int]) -> Fraction:
        items = exponents.items() if isinstance(exponents, Mapping) else enumerate(exponents)
        key = tuple(sorted((v, e) for v, e in items if e))
        return self.terms.get(key, Fraction(0))

    # arithmetic

    def _check(self, other: "MultiPoly") -> None:
        if self.arity != other.arity:
            raise ArityMismatch(f"arities {self.arity} and {other.arity} differ")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.arity, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly(self.arity, out, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.arity, {m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "MultiPoly":
        c = _frac(c)
        if not c:
            return MultiPoly(self.arity)
        return MultiPoly(self.arity, {m: c * a for m, a in self.terms.items()}, _clean=True)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(self.arity, {m: c for m, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.constant(self.arity, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # calculus

    def differentiate(self, v: int) -> "MultiPoly":
        if not 0 <= v < self.arity:
            raise ArityMismatch(f"variable {v} outside arity {self.arity}")
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for k, (w, e) in enumerate(m):
                if w == v:
                    nm = m[:k] + ((w, e - 1),) + m[k + 1:] if e > 1 else m[:k] + m[k + 1:]
                    out[nm] = c * e
                    break
        return MultiPoly(self.arity, out, _clean=True)

    def directional_derivative(self, d: Sequence) -> "MultiPoly":
        if len(d) != self.arity:
            raise ArityMismatch(f"direction of length {len(d)} for arity {self.arity}")
        d = [_frac(x) for x in d]
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for k, (w, e) in enumerate(m):
                dw = d[w]
                if dw:
                    nm = m[:k] + ((w, e - 1),) + m[k + 1:] if e > 1 else m[:k] + m[k + 1:]
                    out[nm] = out.get(nm, 0) + c * e * dw
        return MultiPoly(self.arity, {m: c for m, c in out.items() if c}, _clean=True)

    def evaluate(self, x: Sequence) -> Fraction:
        if len(x) != self.arity:
            raise ArityMismatch(f"point of length {len(x)} for arity {self.arity}")
        x = [_frac(v) for v in x]
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= x[v] ** e if e > 1 else x[v]
            total += t
        return total

    def gradient_at(self, x: Sequence) -> tuple[Fraction, ...]:
        if len(x) != self.arity:
            raise ArityMismatch(f"point of length {len(x)} for arity {self.arity}")
        x = [_frac(v) for v in x]
        g = [Fraction(0)] * self.arity
        for m, c in self.terms.items():
            vals = [x[v] ** e for v, e in m]
            for k, (v, e) in enumerate(m):
                t = c * e * x[v] ** (e - 1)
                for j, val in enumerate(vals):
                    if j != k:
                        t *= val
                g[v] += t
        return tuple(g)

    def hessian_at(self, x: Sequence) -> SymMatrix:
        if len(x) != self.arity:
            raise ArityMismatch(f"point of length {len(x)} for arity {self.arity}")
        x = [_frac(v) for v in x]
        n = self.arity
        H = [[Fraction(0)] * n for _ in range(n)]
        for m, c in self.terms.items():
            s = len(m)
            vals = [x[v] ** e for v, e in m]
            for a in range(s):
                va, ea = m[a]
                for b in range(a, s):
                    vb, eb = m[b]
                    if a == b:
                        if ea < 2:
                            continue
                        t = c * ea * (ea - 1) * x[va] ** (ea - 2)
                    else:
                        t = c * ea * eb * x[va] ** (ea - 1) * x[vb] ** (eb - 1)
                    for j in range(s):
                        if j != a and j != b:
                            t *= vals[j]
                    H[va][vb] += t
                    if a != b:
                        H[vb][va] += t
        return SymMatrix(H)

    # substitution

    def substitute(self, images: Mapping[int, "MultiPoly"], arity: int | None = None) -> "MultiPoly":
        """Replace variable ``v`` by ``images[v]``; variables not listed map to
        themselves (which requires ``arity`` to cover them)."""
        arity = self.arity if arity is None else arity
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(v: int, e: int) -> MultiPoly:
            key = (v, e)
            if key not in powers:
                base = images.get(v)
                if base is None:
                    if v >= arity:
                        raise ArityMismatch(f"variable {v} has no image")
                    powers[key] = MultiPoly(arity, {((v, e),): 1}, _clean=True)
                elif e == 1:
                    powers[key] = base
                else:
                    powers[key] = power(v, e - 1) * base
            return powers[key]

        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            acc = {ONE: c}
            for v, e in m:
                p = power(v, e)
                nxt: dict[Monomial, Fraction] = {}
                for m1, c1 in acc.items():
                    for m2, c2 in p.terms.items():
                        key = mono_mul(m1, m2)
                        nxt[key] = nxt.get(key, 0) + c1 * c2
                acc = nxt
            for key, val in acc.items():
                out[key] = out.get(key, 0) + val
        return MultiPoly(arity, {m: c for m, c in out.items() if c}, _clean=True)

    def substitute_linear(self, A: LinearMap) -> "MultiPoly":
        """``f∘A`` where ``A`` has one row per variable of ``f``."""
        if A.rows != self.arity:
            raise ArityMismatch(f"map with {A.rows} rows for arity {self.arity}")
        images = {v: MultiPoly.linear(A.cols, A.row_terms(v)) for v in range(A.rows)}
        return self.substitute(images, A.cols)

    def rename(self, mapping: Mapping[int, int], arity: int) -> "MultiPoly":
        """Move variable ``v`` to ``mapping[v]`` without any arithmetic."""
        out = {}
        for m, c in self.terms.items():
            out[tuple(sorted((mapping[v], e) for v, e in m))] = c
        return MultiPoly(arity, out, _clean=True)

    # serialization

    def to_records(self) -> list[tuple[list[int], int, int]]:
        recs = []
        for m, c in self.terms.items():
            exps = [0] * self.arity
            for v, e in m:
                exps[v] = e
            recs.append((exps, c.numerator, c.denominator))
        recs.sort(key=lambda r: ([-x for x in r[0]]))
        return recs

    @classmethod
    def from_records(cls, arity: int, records: Iterable[Sequence]) -> "MultiPoly":
        terms: dict[Monomial, Fraction] = {}
        for exps, num, den in records:
            if len(exps) != arity:
                raise ArityMismatch(f"exponent vector of length {len(exps)} for arity {arity}")
            key = tuple((v, e) for v, e in enumerate(exps) if e)
            terms[key] = terms.get(key, 0) + Fraction(num, den)
        return cls(arity, terms)

    def __repr__(self) -> str:
        return f"MultiPoly(arity={self.arity}, terms={len(self.terms)})"

    def format(self, names: Sequence[str] | None = None) -> str:
        from .unipoly import format_rational

        if not self.terms:
            return "0"
        names = names or [f"t{v}" for v in range(self.arity)]
        parts = []
        for exps, num, den in self.to_records():
            c = Fraction(num, den)
            mono = "*".join(
                names[v] if e == 1 else f"{names[v]}^{e}" for v, e in enumerate(exps) if e
            )
            mag = abs(c)
            body = mono if mono and mag == 1 else (format_rational(mag) + ("*" + mono if mono else ""))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        return text + "".join(f" {s} {b}" for s, b in parts[1:])


def euler_identities_hold(f: MultiPoly, x: Sequence) -> bool:
    """Both homogeneity identities at ``x``: gradient·x = d f and H x = (d-1) gradient."""
    d = f.homogeneous_degree()
    if d is None:
        return False
    x = [_frac(v) for v in x]
    grad = f.gradient_at(x)
    lhs = sum((g * v for g, v in zip(grad, x)), Fraction(0))
    if lhs != d * f.evaluate(x):
        return False
    Hx = f.hessian_at(x).matvec(x)
    return all(a == (d - 1) * g for a, g in zip(Hx, grad))
