# Identity suites for h_n and rho_n, at series level and as exact polynomials.

import logging
from typing import List

from . import bivar, modforms
from .diagnostics import CheckResult, run_check
from .qseries import quarters

logger = logging.getLogger(__name__)

# Substitution spot checks stay below this index; the polynomial degrees grow as 4n.
SUBSTITUTION_NMAX = 10


def series_checks(nmax: int, trunc: int) -> List[CheckResult]:
    """Checks on concrete q-series truncated at `trunc` quarters."""
    cache = modforms.get_cache(trunc)
    rows = [
        run_check("theta2^4 + theta4^4 = theta3^4", lambda: modforms.check_theta_identity(trunc)),
        run_check("E4 from thetas = divisor sum",
                  lambda: modforms.same_series(cache.e4, modforms.e4_divisor_series(trunc))),
        run_check("Delta24 starts at q^2 with coefficient 1",
                  lambda: cache.delta24.minexp == quarters(2) and cache.delta24.coeff(quarters(2)) == 1),
    ]
    for n in range(1, nmax + 1):
        rows.append(run_check(f"h_{n} series = closed form",
                              lambda n=n: modforms.same_series(cache.h(n), modforms.h_closed_series(n, trunc))))
    for n in range(0, nmax + 1):
        rows.append(run_check(f"rho_{n} series = closed form",
                              lambda n=n: modforms.same_series(cache.rho(n), modforms.rho_closed_series(n, trunc))))
    for n in range(3, nmax + 1):
        rows.append(run_check(f"h_{n} series recurrence", lambda n=n: modforms.check_recurrence_h_series(n, trunc)))
        rows.append(run_check(f"rho_{n} series recurrence", lambda n=n: modforms.check_recurrence_rho_series(n, trunc)))
    for n in range(0, min(nmax, SUBSTITUTION_NMAX) + 1):
        rows.append(run_check(f"rho_{n} coefficients positive",
                              lambda n=n: all(c > 0 for c in cache.rho(n).terms.values())))
        rows.append(run_check(f"h_{n} polynomial at theta2^4, theta4^4",
                              lambda n=n: modforms.same_series(modforms.substitute_theta(bivar.h_poly(n), trunc),
                                                               cache.h(n))))
        rows.append(run_check(f"rho_{n} polynomial at theta2^4, theta4^4",
                              lambda n=n: modforms.same_series(modforms.substitute_theta(bivar.rho_poly(n), trunc),
                                                               cache.rho(n))))
    return rows


def _table_check(n: int, poly, closed) -> tuple[bool, str]:
    coeffs = bivar.change_of_basis(poly(n))
    return coeffs == closed(n), bivar.render_basis(coeffs, n)


def polynomial_checks(nmax: int) -> List[CheckResult]:
    """Exact identities in a, b; no truncation involved."""
    E = bivar.E_poly()
    A, B = bivar.A, bivar.B
    rows = [
        run_check("E^2 = (a+b)^2 (a^2+b^2) + a^2 b^2",
                  lambda: E * E == (A + B) ** 2 * (A * A + B * B) + A * A * B * B),
        run_check("E and Delta symmetric", lambda: E.swap() == E and bivar.Delta_poly().swap() == bivar.Delta_poly()),
    ]
    for n in range(1, nmax + 1):
        rows.append(run_check(f"h_{n} = closed form", lambda n=n: bivar.h_poly(n) == bivar.h_closed_poly(n)))
        rows.append(run_check(f"h_{n} in (E, Delta) basis",
                              lambda n=n: _table_check(n, bivar.h_poly, bivar.h_closed_coefficients)))
    for n in range(0, nmax + 1):
        rows.append(run_check(f"rho_{n} = closed form", lambda n=n: bivar.rho_poly(n) == bivar.rho_closed_poly(n)))
        rows.append(run_check(f"rho_{n} in (E, Delta) basis",
                              lambda n=n: _table_check(n, bivar.rho_poly, bivar.rho_closed_coefficients)))
        rows.append(run_check(f"h_{n}, rho_{n} symmetric under a <-> b",
                              lambda n=n: bivar.h_poly(n).swap() == bivar.h_poly(n)
                              and bivar.rho_poly(n).swap() == bivar.rho_poly(n)))
    for n in range(3, nmax + 1):
        rows.append(run_check(f"h_{n} recurrence", lambda n=n: bivar.check_recurrence_h(n)))
        rows.append(run_check(f"rho_{n} recurrence", lambda n=n: bivar.check_recurrence_rho(n)))
    return rows


def run_identities(nmax: int, trunc: int) -> List[CheckResult]:
    if nmax < 3:
        raise ValueError(f"nmax must be at least 3 for the recurrences, got {nmax}")
    rows = series_checks(nmax, trunc) + polynomial_checks(nmax)
    logger.info("%d identity checks, %d failed", len(rows), sum(1 for r in rows if not r.passed))
    return rows
