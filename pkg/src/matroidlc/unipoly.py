"""Dense univariate polynomials over the rationals, with Sturm root counting."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NotDivisible

Number = int | Fraction


def _trim(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class UniPoly:
    """Polynomial in ``q`` stored as coefficients from the constant term up."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs: tuple = _trim([_norm(Fraction(c) if not isinstance(c, int) else c) for c in coeffs])

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "UniPoly":
        return cls([0] * k + [c])

    @classmethod
    def q(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Number:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly | Number") -> "UniPoly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly | Number") -> "UniPoly":
        return self + (-_lift(other))

    def __rsub__(self, other: Number) -> "UniPoly":
        return _lift(other) - self

    def __mul__(self, other: "UniPoly | Number") -> "UniPoly":
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _norm(acc) if isinstance(acc, Fraction) else acc

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        lead = Fraction(other.coeffs[-1])
        dq = other.degree
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quo), UniPoly(rem[:dq] if dq > 0 else [])

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        quo, rem = self.divmod(other)
        if not rem.is_zero():
            raise NotDivisible(f"remainder {rem} is nonzero")
        return quo

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def primitive(self) -> "UniPoly":
        """Positive rational multiple with coprime integer coefficients."""
        if self.is_zero():
            return self
        fr = [Fraction(c) for c in self.coeffs]
        den = lcm(*(c.denominator for c in fr))
        ints = [int(c * den) for c in fr]
        g = gcd(*ints)
        return UniPoly([c // g for c in ints])

    def monic(self) -> "UniPoly":
        lead = Fraction(self.coeffs[-1])
        return UniPoly([Fraction(c) / lead for c in self.coeffs])

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _lift(x: "UniPoly | Number") -> UniPoly:
    return x if isinstance(x, UniPoly) else UniPoly([x])


def format_rational(x: Number) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_poly(p: UniPoly, var: str = "q") -> str:
    """Descending powers with explicit signs, e.g. ``q^2 - 3*q + 2``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = Fraction(p[k])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = format_rational(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1].primitive()
    return a.primitive() if not a.is_zero() else a


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p.primitive(), p.derivative().primitive()]
    while not seq[-1].is_zero():
        rem = seq[-2].divmod(seq[-1])[1]
        seq.append((-rem).primitive() if not rem.is_zero() else rem)
    seq.pop()
    return seq


def _sign_changes(values: Iterable[Number]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_inf(p: UniPoly, positive: bool) -> int:
    lead = p.coeffs[-1]
    s = 1 if lead > 0 else -1
    if not positive and p.degree % 2:
        s = -s
    return s


def distinct_real_roots(p: UniPoly, lo: Number | None = None, hi: Number | None = None) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``.

    ``None`` stands for an infinite endpoint.
    """
    if p.degree <= 0:
        return 0
    seq = sturm_sequence(p)

    def changes(x):
        if x is None:
            return None
        return _sign_changes(s(x) for s in seq)

    left = _sign_changes(_sign_at_inf(s, False) for s in seq) if lo is None else changes(lo)
    right = _sign_changes(_sign_at_inf(s, True) for s in seq) if hi is None else changes(hi)
    return left - right


def squarefree_decomposition(p: UniPoly) -> list[UniPoly]:
    """Yun's algorithm: factors ``a_1, a_2, ...`` with ``p ~ prod a_i^i``."""
    if p.degree <= 0:
        return []
    out = []
    a = p.primitive()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a.exact_div(c)
    y = b.exact_div(c)
    while w.degree > 0:
        z = y - w.derivative()
        g = poly_gcd(w, z) if not z.is_zero() else w.primitive()
        out.append(g)
        w = w.exact_div(g)
        y = z.exact_div(g) if not z.is_zero() else UniPoly()
    return out


def real_root_count_with_multiplicity(p: UniPoly) -> int:
    return sum(i * distinct_real_roots(f) for i, f in enumerate(squarefree_decomposition(p), 1))


def is_real_rooted(p: UniPoly) -> bool:
    if p.is_zero() or p.degree == 0:
        return True
    return real_root_count_with_multiplicity(p) == p.degree


def sign_variations(coeffs: Sequence[Number]) -> int:
    return _sign_changes(coeffs)


def lagrange_interpolate(points: Sequence[tuple[Number, Number]]) -> UniPoly:
    """The unique polynomial of degree < len(points) through ``points``."""
    out = UniPoly()
    for i, (xi, yi) in enumerate(points):
        term = UniPoly([yi])
        for j, (xj, _) in enumerate(points):
            if j != i:
                term = term * UniPoly([Fraction(-xj, 1) / (xi - xj), Fraction(1) / (xi - xj)])
        out = out + term
    return out
