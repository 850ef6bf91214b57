# Exact polynomials in a = theta2^4 and b = theta4^4 (so theta3^4 = a + b).
#
# h_n and rho_n are verified here as polynomial identities, free of any truncation.

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Mapping

from .errors import DivisionByZero, NotDivisible, NotInBasis

Monomial = tuple[int, int]


@dataclass(frozen=True)
class BPoly:
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    @staticmethod
    def from_terms(pairs) -> "BPoly":
        out: dict[Monomial, int] = {}
        for mono, c in pairs:
            out[mono] = out.get(mono, 0) + c
        return BPoly({m: c for m, c in out.items() if c})

    @staticmethod
    def constant(c: int) -> "BPoly":
        return BPoly({(0, 0): c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> tuple[Monomial, int]:
        """Leading monomial and coefficient in lex order with a > b."""
        mono = max(self.terms)
        return mono, self.terms[mono]

    def degree(self) -> int | None:
        """Total degree if homogeneous, else None."""
        degrees = {i + j for i, j in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def swap(self) -> "BPoly":
        """Image under a <-> b."""
        return BPoly({(j, i): c for (i, j), c in self.terms.items()})

    def scale(self, k: int) -> "BPoly":
        return BPoly.from_terms((m, k * c) for m, c in self.terms.items())

    def __add__(self, other: "BPoly") -> "BPoly":
        return BPoly.from_terms(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "BPoly":
        return BPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "BPoly") -> "BPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out: dict[Monomial, int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                mono = (i1 + i2, j1 + j2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return BPoly({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BPoly":
        if n < 0:
            raise ValueError(f"negative power {n}")
        result, base = BPoly.constant(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result


A = BPoly({(1, 0): 1})
B = BPoly({(0, 1): 1})
ONE = BPoly.constant(1)


def bp_add(p: BPoly, q: BPoly) -> BPoly:
    return p + q


def bp_sub(p: BPoly, q: BPoly) -> BPoly:
    return p - q


def bp_mul(p: BPoly, q: BPoly) -> BPoly:
    return p * q


def bp_pow(p: BPoly, n: int) -> BPoly:
    return p ** n


def bp_div_exact(num: BPoly, den: BPoly) -> BPoly:
    """Exact quotient by repeated leading-term cancellation (lex, a > b)."""
    if den.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    (di, dj), dc = den.leading()
    rest = num
    quotient: dict[Monomial, int] = {}
    while not rest.is_zero():
        (ri, rj), rc = rest.leading()
        if ri < di or rj < dj:
            raise NotDivisible(f"leading term a^{ri} b^{rj} not divisible by a^{di} b^{dj}")
        q, r = divmod(rc, dc)
        if r:
            raise NotDivisible(f"leading coefficient {rc} not divisible by {dc}")
        mono = (ri - di, rj - dj)
        quotient[mono] = q
        rest = rest - den * BPoly({mono: q})
    return BPoly(quotient)


@lru_cache(maxsize=None)
def E_poly() -> BPoly:
    return A * A + A * B + B * B


@lru_cache(maxsize=None)
def Delta_poly() -> BPoly:
    return (A * B * (A + B)) ** 2


@lru_cache(maxsize=None)
def _e_power(n: int) -> BPoly:
    return E_poly() ** n


@lru_cache(maxsize=None)
def _delta_power(n: int) -> BPoly:
    return Delta_poly() ** n


@lru_cache(maxsize=None)
def h_poly(n: int) -> BPoly:
    if n < 0:
        raise ValueError(f"h_n needs n >= 0, got {n}")
    return A ** (2 * n) + B ** (2 * n) + (A + B) ** (2 * n)


@lru_cache(maxsize=None)
def rho_poly(n: int) -> BPoly:
    if n < -1:
        raise ValueError(f"rho_n needs n >= -1, got {n}")
    if n == -1:
        return BPoly()
    p = 2 * n + 3
    return bp_div_exact((A + B) ** p - A ** p - B ** p, A * B * (A + B))


def h_closed_coefficients(n: int) -> dict[int, int]:
    """{i: c} with h_n = sum c * Delta^i * E^(n-3i)."""
    if n < 1:
        raise ValueError(f"closed form of h_n needs n >= 1, got {n}")
    coeffs = {0: 2}
    for i in range(1, n // 3 + 1):
        c, r = divmod(n * comb(n - i - 1, 2 * i - 1), i)
        if r:
            raise NotDivisible(f"h_{n}: prefactor at i={i} is not an integer")
        coeffs[i] = c
    return coeffs


def rho_closed_coefficients(n: int) -> dict[int, int]:
    """{i: c} with rho_n = sum c * Delta^i * E^(n-3i)."""
    if n < 0:
        raise ValueError(f"closed form of rho_n needs n >= 0, got {n}")
    coeffs = {}
    for i in range(0, n // 3 + 1):
        c, r = divmod((2 * n + 3) * comb(n - i, 2 * i), 2 * i + 1)
        if r:
            raise NotDivisible(f"rho_{n}: prefactor at i={i} is not an integer")
        coeffs[i] = c
    return coeffs


def from_basis(coeffs: Mapping[int, int], n: int) -> BPoly:
    """sum c * Delta^i * E^(n-3i) expanded into a, b."""
    total = BPoly()
    for i, c in coeffs.items():
        total = total + (_delta_power(i) * _e_power(n - 3 * i)).scale(c)
    return total


def h_closed_poly(n: int) -> BPoly:
    return from_basis(h_closed_coefficients(n), n)


def rho_closed_poly(n: int) -> BPoly:
    return from_basis(rho_closed_coefficients(n), n)


def check_recurrence_h(n: int) -> bool:
    if n < 3:
        raise ValueError(f"recurrence needs n >= 3, got {n}")
    E, D = E_poly(), Delta_poly()
    return h_poly(n) == 2 * E * h_poly(n - 1) - E * E * h_poly(n - 2) + D * h_poly(n - 3)


def check_recurrence_rho(n: int) -> bool:
    if n < 3:
        raise ValueError(f"recurrence needs n >= 3, got {n}")
    E, D = E_poly(), Delta_poly()
    return rho_poly(n) == 2 * E * rho_poly(n - 1) - E * E * rho_poly(n - 2) + D * rho_poly(n - 3)


def change_of_basis(p: BPoly) -> dict[int, int]:
    """Greedy expansion of a symmetric homogeneous p as {i: c}, p = sum c * Delta^i * E^(d-3i).

    The leading monomial of Delta^i E^j is a^(4i+2j) b^(2i), so the b-degree of the
    current leading term fixes i.
    """
    if p.is_zero():
        return {}
    degree = p.degree()
    if degree is None or degree % 2:
        raise NotInBasis("polynomial is not homogeneous of even degree")
    d = degree // 2
    coeffs: dict[int, int] = {}
    rest = p
    while not rest.is_zero():
        (_, bdeg), c = rest.leading()
        i, odd = divmod(bdeg, 2)
        if odd or d - 3 * i < 0:
            raise NotInBasis(f"leading b-degree {bdeg} does not match any Delta^i E^j of degree {degree}")
        coeffs[i] = c
        rest = rest - (_delta_power(i) * _e_power(d - 3 * i)).scale(c)
    return coeffs


def _power(symbol: str, n: int) -> str:
    if n == 0:
        return ""
    return symbol if n == 1 else f"{symbol}^{n}"


def _join_terms(terms: list[tuple[int, str]]) -> str:
    if not terms:
        return "0"
    parts = []
    for c, body in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if body:
            text = body if mag == 1 else f"{mag}*{body}"
        else:
            text = str(mag)
        parts.append((sign, text))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out


def render_monomials(p: BPoly) -> str:
    """E.g. 'a^4*b^2 + 2*a^3*b^3 + a^2*b^4' (lex order, a > b)."""
    terms = []
    for (i, j), c in sorted(p.terms.items(), reverse=True):
        body = "*".join(x for x in (_power("a", i), _power("b", j)) if x)
        terms.append((c, body))
    return _join_terms(terms)


def render_basis(coeffs: Mapping[int, int], n: int) -> str:
    """E.g. '2*E^10 + 80*Delta*E^7 + 175*Delta^2*E^4 + 20*Delta^3*E'."""
    terms = []
    for i in sorted(coeffs):
        body = "*".join(x for x in (_power("Delta", i), _power("E", n - 3 * i)) if x)
        terms.append((coeffs[i], body))
    return _join_terms(terms)
