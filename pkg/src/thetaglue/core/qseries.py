# Truncated q-series with exact integer coefficients on a quarter-integer exponent grid.
#
# Exponents are stored in quarters: the key 9 stands for q^(9/4). A series knows
# its coefficients strictly below `trunc` and nothing at or above it.

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping

from .errors import BeyondTruncation, DivisionByZero, NotDivisible, OddCoefficient

logger = logging.getLogger(__name__)

QUARTERS_PER_POWER = 4


def quarters(power: int) -> int:
    """Convert an integer q-power to the quarter grid."""
    return power * QUARTERS_PER_POWER


@dataclass(frozen=True)
class QSeries:
    terms: Mapping[int, int] = field(default_factory=dict)
    trunc: int = 0

    def __post_init__(self):
        if self.trunc < 0:
            raise ValueError(f"negative truncation {self.trunc}")

    @property
    def minexp(self) -> int:
        """Lowest stored exponent; equals trunc for the zero series."""
        return min(self.terms) if self.terms else self.trunc

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: int) -> int:
        if e >= self.trunc:
            raise BeyondTruncation(f"coefficient at {e} quarters requested, series known below {self.trunc}")
        return self.terms.get(e, 0)

    def truncate(self, trunc: int) -> "QSeries":
        """Forget everything at or above `trunc` (never raises the truncation)."""
        trunc = min(trunc, self.trunc)
        return QSeries({e: c for e, c in self.terms.items() if e < trunc}, trunc)

    def add(self, other: "QSeries") -> "QSeries":
        trunc = min(self.trunc, other.trunc)
        out = {e: c for e, c in self.terms.items() if e < trunc}
        for e, c in other.terms.items():
            if e < trunc:
                out[e] = out.get(e, 0) + c
        return _normalized(out, trunc)

    def neg(self) -> "QSeries":
        return QSeries({e: -c for e, c in self.terms.items()}, self.trunc)

    def sub(self, other: "QSeries") -> "QSeries":
        return self.add(other.neg())

    def scale(self, k: int) -> "QSeries":
        if k == 0:
            return QSeries({}, self.trunc)
        return QSeries({e: k * c for e, c in self.terms.items()}, self.trunc)

    def mul(self, other: "QSeries") -> "QSeries":
        """Cauchy product.

        The result is known below min(a.trunc + b.minexp, b.trunc + a.minexp): a
        missing coefficient of one factor can only meet the other factor from its
        lowest exponent upwards.
        """
        trunc = min(self.trunc + other.minexp, other.trunc + self.minexp)
        out: dict[int, int] = {}
        right = sorted(other.terms.items())
        for i, ci in self.terms.items():
            for j, cj in right:
                e = i + j
                if e >= trunc:
                    break
                out[e] = out.get(e, 0) + ci * cj
        return _normalized(out, trunc)

    def pow(self, n: int) -> "QSeries":
        if n < 0:
            raise ValueError(f"negative power {n}")
        result = one(self.trunc)
        base = self
        while n:
            if n & 1:
                result = result.mul(base)
            n >>= 1
            if n:
                base = base.mul(base)
        return result

    def div_exact(self, den: "QSeries") -> "QSeries":
        """Long division from the lowest exponent.

        With e_d = den.minexp and qmin = num.minexp - e_d the quotient is known below
        min(num.trunc - e_d, den.trunc - e_d + qmin).
        """
        if den.is_zero():
            raise DivisionByZero("division by the zero series")
        e_d = den.minexp
        lead = den.terms[e_d]
        if self.is_zero():
            return QSeries({}, max(self.trunc - e_d, 0))
        qmin = self.minexp - e_d
        if qmin < 0:
            raise NotDivisible(f"quotient would start at negative exponent {qmin}")
        trunc = min(self.trunc - e_d, den.trunc - e_d + qmin)
        remainder = dict(self.terms)
        den_items = sorted(den.terms.items())
        out: dict[int, int] = {}
        for e in range(qmin, trunc):
            r = remainder.get(e + e_d, 0)
            if not r:
                continue
            q, rest = divmod(r, lead)
            if rest:
                raise NotDivisible(f"coefficient {r} at {e + e_d} quarters is not a multiple of {lead}")
            out[e] = q
            for j, dj in den_items:
                ex = e + j
                if ex >= trunc + e_d:
                    break
                remainder[ex] = remainder.get(ex, 0) - q * dj
        return _normalized(out, trunc)

    def halve_exact(self) -> "QSeries":
        out = {}
        for e, c in self.terms.items():
            if c % 2:
                raise OddCoefficient(f"odd coefficient {c} at {e} quarters")
            out[e] = c // 2
        return QSeries(out, self.trunc)

    def to_text(self) -> str:
        lines = [f"trunc={self.trunc}"]
        lines.extend(f"{e}\t{c}" for e, c in sorted(self.terms.items()))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "QSeries":
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines or not lines[0].startswith("trunc="):
            raise ValueError("missing 'trunc=' header")
        trunc = int(lines[0][len("trunc="):])
        pairs = []
        for line in lines[1:]:
            e, c = line.split("\t")
            pairs.append((int(e), int(c)))
        return from_terms(pairs, trunc)

    def to_rows(self) -> list[tuple[str, int]]:
        """(exponent as an exact fraction string, coefficient) in increasing order."""
        return [(str(Fraction(e, QUARTERS_PER_POWER)), c) for e, c in sorted(self.terms.items())]

    __add__ = add
    __sub__ = sub
    __neg__ = neg

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        return self.pow(n)


def _normalized(terms: dict[int, int], trunc: int) -> QSeries:
    return QSeries({e: c for e, c in terms.items() if c and e < trunc}, trunc)


def from_terms(pairs: Iterable[tuple[int, int]], trunc: int) -> QSeries:
    out: dict[int, int] = {}
    for e, c in pairs:
        if e < 0:
            raise ValueError(f"negative exponent {e}")
        if e < trunc:
            out[e] = out.get(e, 0) + c
    return _normalized(out, trunc)


def zero(trunc: int) -> QSeries:
    return QSeries({}, trunc)


def one(trunc: int) -> QSeries:
    return constant(1, trunc)


def constant(c: int, trunc: int) -> QSeries:
    return from_terms([(0, c)], trunc)


def linear_combination(pairs: Iterable[tuple[Fraction | int, QSeries]], trunc: int | None = None) -> QSeries:
    """Sum of rational multiples of series; the total must have integer coefficients.

    Raises NotDivisible when it does not.
    """
    pairs = [(Fraction(c), s) for c, s in pairs]
    if not pairs:
        if trunc is None:
            raise ValueError("empty combination needs an explicit truncation")
        return zero(trunc)
    denom = lcm(*(c.denominator for c, _ in pairs))
    common = min(s.trunc for _, s in pairs)
    if trunc is not None:
        common = min(common, trunc)
    total = zero(common)
    for c, s in pairs:
        total = total.add(s.scale(c.numerator * (denom // c.denominator)))
    if denom == 1:
        return total
    out = {}
    for e, c in total.terms.items():
        q, rest = divmod(c, denom)
        if rest:
            raise NotDivisible(f"coefficient {Fraction(c, denom)} at {e} quarters is not an integer")
        out[e] = q
    return QSeries(out, total.trunc)


def common_truncation(*series: QSeries) -> list[QSeries]:
    """Cut every series down to the smallest truncation among them."""
    trunc = min(s.trunc for s in series)
    return [s.truncate(trunc) for s in series]
