# Concrete q-series: theta2/3/4, E4, Delta24, h_n, rho_n, and their closed forms.

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

from sympy import divisor_sigma

from .bivar import BPoly, h_closed_coefficients, rho_closed_coefficients
from .errors import UnknownSeries
from .qseries import QSeries, common_truncation, from_terms, one, quarters

logger = logging.getLogger(__name__)

ThetaKind = Literal[2, 3, 4]
DEFAULT_ORDER = 32
# Delta = a^2 b^2 (a+b)^2 = 2^8 * Delta24
DELTA_SCALE = 2 ** 8


def theta(kind: ThetaKind, trunc: int) -> QSeries:
    """Direct summation of theta_kind over every m with exponent below trunc."""
    if kind not in (2, 3, 4):
        raise ValueError(f"theta kind must be 2, 3 or 4, got {kind}")
    pairs = []
    m = 0
    while True:
        if kind == 2:
            # (m + 1/2)^2 in quarters, m and -m-1 give the same exponent
            e = (2 * m + 1) ** 2
            if e >= trunc:
                break
            pairs.append((e, 2))
        else:
            e = 4 * m * m
            if e >= trunc:
                break
            sign = -1 if kind == 4 and m % 2 else 1
            pairs.append((e, sign * (1 if m == 0 else 2)))
        m += 1
    return from_terms(pairs, trunc)


def _halve_times(s: QSeries, times: int) -> QSeries:
    for _ in range(times):
        s = s.halve_exact()
    return s


@dataclass
class ModformCache:
    """All series of one truncation, with h/rho and powers memoized by index."""
    trunc: int
    theta2: QSeries
    theta3: QSeries
    theta4: QSeries
    e4: QSeries
    delta24: QSeries
    memo_h: dict[int, QSeries] = field(default_factory=dict)
    memo_rho: dict[int, QSeries] = field(default_factory=dict)
    _powers: dict[tuple[str, int], QSeries] = field(default_factory=dict, repr=False)
    _wide: "ModformCache | None" = field(default=None, repr=False)
    _rho_den: QSeries | None = field(default=None, repr=False)

    def _base(self, kind: str) -> QSeries:
        return {"2": self.theta2, "3": self.theta3, "4": self.theta4,
                "E": self.e4, "D": self.delta24}[kind]

    def power(self, kind: str, n: int) -> QSeries:
        """kind in '2', '3', '4' (theta), 'E' (E4), 'D' (Delta24); truncated to this cache."""
        key = (kind, n)
        cached = self._powers.get(key)
        if cached is not None:
            return cached
        if n == 0:
            result = one(self.trunc)
        elif n > 8 and (kind, n - 8) in self._powers:
            result = self._powers[(kind, n - 8)].mul(self.power(kind, 8))
        elif n >= 1 and (kind, n - 1) in self._powers:
            result = self._powers[(kind, n - 1)].mul(self._base(kind))
        else:
            result = self._base(kind).pow(n)
        result = result.truncate(self.trunc)
        self._powers[key] = result
        return result

    def theta_power(self, kind: ThetaKind, n: int) -> QSeries:
        return self.power(str(kind), n)

    def h(self, n: int) -> QSeries:
        if n < 0:
            raise ValueError(f"h_n needs n >= 0, got {n}")
        if n not in self.memo_h:
            e = 8 * n
            self.memo_h[n] = self.power("2", e) + self.power("3", e) + self.power("4", e)
        return self.memo_h[n]

    def rho(self, n: int) -> QSeries:
        if n < -1:
            raise ValueError(f"rho_n needs n >= -1, got {n}")
        if n == -1:
            return QSeries({}, self.trunc)
        if n not in self.memo_rho:
            wide = self.widened()
            e = 8 * n + 12
            num = wide.power("3", e) - wide.power("2", e) - wide.power("4", e)
            self.memo_rho[n] = num.div_exact(self.rho_denominator()).truncate(self.trunc)
            logger.debug("rho_%d built at trunc %d", n, self.trunc)
        return self.memo_rho[n]

    def rho_denominator(self) -> QSeries:
        """(theta2 theta3 theta4)^4 on the widened cache."""
        if self._rho_den is None:
            wide = self.widened()
            self._rho_den = wide.theta2.mul(wide.theta3).mul(wide.theta4).pow(4)
        return self._rho_den

    def widened(self) -> "ModformCache":
        """A companion cache four quarters deeper, so quotients by (theta2 theta3 theta4)^4 reach trunc."""
        if self._wide is None:
            self._wide = build_cache(self.trunc + 4)
        return self._wide


def build_cache(trunc: int) -> ModformCache:
    t2, t3, t4 = theta(2, trunc), theta(3, trunc), theta(4, trunc)
    e4 = (t2.pow(8) + t3.pow(8) + t4.pow(8)).truncate(trunc).halve_exact()
    delta24 = _halve_times(t2.mul(t3).mul(t4).pow(8).truncate(trunc), 8)
    logger.debug("modular-form cache built at trunc %d quarters", trunc)
    return ModformCache(trunc=trunc, theta2=t2, theta3=t3, theta4=t4, e4=e4, delta24=delta24)


@lru_cache(maxsize=8)
def get_cache(trunc: int) -> ModformCache:
    """Shared cache per truncation (in quarters)."""
    return build_cache(trunc)


def e4_series(trunc: int) -> QSeries:
    return get_cache(trunc).e4


def e4_divisor_series(trunc: int) -> QSeries:
    """1 + 240 * sum sigma_3(m) q^(2m), independent of any theta function."""
    pairs = [(0, 1)]
    m = 1
    while quarters(2 * m) < trunc:
        pairs.append((quarters(2 * m), 240 * int(divisor_sigma(m, 3))))
        m += 1
    return from_terms(pairs, trunc)


def delta24_series(trunc: int) -> QSeries:
    return get_cache(trunc).delta24


def tau(m: int, trunc: int = quarters(DEFAULT_ORDER)) -> int:
    return get_cache(trunc).delta24.coeff(quarters(2 * m))


def h_series(n: int, trunc: int) -> QSeries:
    return get_cache(trunc).h(n)


def rho_series(n: int, trunc: int) -> QSeries:
    return get_cache(trunc).rho(n)


def _from_basis(coeffs: dict[int, int], n: int, cache: ModformCache) -> QSeries:
    total = QSeries({}, cache.trunc)
    for i, c in coeffs.items():
        term = cache.power("D", i).mul(cache.power("E", n - 3 * i)).truncate(cache.trunc)
        total = total + term.scale(c * DELTA_SCALE ** i)
    return total


def h_closed_series(n: int, trunc: int) -> QSeries:
    return _from_basis(h_closed_coefficients(n), n, get_cache(trunc))


def rho_closed_series(n: int, trunc: int) -> QSeries:
    return _from_basis(rho_closed_coefficients(n), n, get_cache(trunc))


def same_series(a: QSeries, b: QSeries) -> bool:
    """Equality to the shared truncation."""
    a, b = common_truncation(a, b)
    return a == b


def check_theta_identity(trunc: int) -> bool:
    c = get_cache(trunc)
    return same_series(c.power("2", 4) + c.power("4", 4), c.power("3", 4))


def check_recurrence_h_series(n: int, trunc: int) -> bool:
    c = get_cache(trunc)
    rhs = (c.e4.mul(c.h(n - 1)).scale(2) - c.power("E", 2).mul(c.h(n - 2))
           + c.delta24.mul(c.h(n - 3)).scale(DELTA_SCALE))
    return same_series(c.h(n), rhs)


def check_recurrence_rho_series(n: int, trunc: int) -> bool:
    c = get_cache(trunc)
    rhs = (c.e4.mul(c.rho(n - 1)).scale(2) - c.power("E", 2).mul(c.rho(n - 2))
           + c.delta24.mul(c.rho(n - 3)).scale(DELTA_SCALE))
    return same_series(c.rho(n), rhs)


def substitute(p: BPoly, a: QSeries, b: QSeries) -> QSeries:
    """Evaluate p(a, b) on series."""
    trunc = min(a.trunc, b.trunc)
    a_pows, b_pows = {0: one(trunc)}, {0: one(trunc)}
    total = QSeries({}, trunc)
    for (i, j), c in sorted(p.terms.items()):
        for pows, base, k in ((a_pows, a, i), (b_pows, b, j)):
            while k not in pows:
                top = max(pows)
                pows[top + 1] = pows[top].mul(base).truncate(trunc)
        total = total + a_pows[i].mul(b_pows[j]).truncate(trunc).scale(c)
    return total


def substitute_theta(p: BPoly, trunc: int) -> QSeries:
    """p evaluated at a = theta2^4, b = theta4^4."""
    c = get_cache(trunc)
    return substitute(p, c.power("2", 4), c.power("4", 4))


_INDEXED_NAME = re.compile(r"^(h|rho):(-?\d+)$")


def series_by_name(name: str, trunc: int) -> QSeries:
    """theta2 | theta3 | theta4 | E4 | Delta24 | h:<n> | rho:<n>."""
    c = get_cache(trunc)
    fixed = {"theta2": c.theta2, "theta3": c.theta3, "theta4": c.theta4,
             "E4": c.e4, "Delta24": c.delta24}
    if name in fixed:
        return fixed[name]
    match = _INDEXED_NAME.match(name)
    if not match:
        raise UnknownSeries(f"unknown series name {name!r}")
    family, n = match.group(1), int(match.group(2))
    try:
        return c.h(n) if family == "h" else c.rho(n)
    except ValueError as exc:
        raise UnknownSeries(f"{name!r}: {exc}") from exc
