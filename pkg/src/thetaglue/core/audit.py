# Audit reports: specializations, Niemeier identifications, counting lemmas and theorem ranges.

from __future__ import annotations

import logging
from itertools import combinations_with_replacement
from typing import Iterable, List, Sequence

from .diagnostics import CheckResult, diff_series, format_mismatches, run_check
from .errors import ThetaGlueError
from .lattice_spec import Family, LatticeSpec, create_spec
from .lattices import (
    evaluate_display,
    root_count,
    theorem_terms,
    theta_by_cosets,
    theta_by_theorem,
    weight_violations,
)
from .modforms import get_cache
from .qseries import QSeries, quarters
from .theorems import ASSERTED_SPECIALIZATIONS, READINGS, count_checks, specialization_display

logger = logging.getLogger(__name__)

MISMATCH_LIMIT = 5
MAX_AUDIT_RANK = 32

# Block parameters evaluated for each printed specialization.
SPECIALIZATION_CASES: dict[int, tuple[tuple[int, ...], ...]] = {
    1: ((1,), (2,), (3,)),
    2: ((1, 1), (0, 1), (0, 0)),
    3: ((1, 1, 1), (1, 1, 2)),
    4: ((0, 0, 0, 0), (1, 1, 0, 0), (0, 0, 0, 1)),
    5: ((1, 1, 1, 1, 1),),
    6: ((0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0)),
}

# (name, spec, coefficient c in E4^3 + c * Delta24)
NIEMEIER_CASES: tuple[tuple[str, LatticeSpec, int], ...] = (
    ("D24", create_spec(Family.ODD_8M, (3,)), 384),
    ("D12^2", create_spec(Family.EVEN_8M4, (1, 1)), -192),
    ("D8^3", create_spec(Family.ODD_8M, (1, 1, 1)), -384),
    ("D6^4", create_spec(Family.FOUR_BLOCK, (0, 0, 0, 0), epsilon=1), -480),
)


def family_for_k(k: int) -> Family:
    return Family.ODD_8M if k % 2 else Family.EVEN_8M4


def _compare(left: QSeries, right: QSeries, left_name: str, right_name: str) -> tuple[bool, str]:
    mismatches = diff_series(left, right, left_name, right_name, limit=MISMATCH_LIMIT)
    return not mismatches, format_mismatches(mismatches)


def specialization_audit(k: int, m: Sequence[int], trunc: int) -> CheckResult:
    """The printed small-k formula at m against the coset sum."""
    if not 1 <= k <= 6:
        raise ValueError(f"specializations exist for 1 <= k <= 6, got {k}")
    spec = create_spec(family_for_k(k), m)
    display = specialization_display(k)

    def check():
        value = evaluate_display(display, spec.m, trunc)
        ok, detail = _compare(value, theta_by_cosets(spec, trunc), "formula", "cosets")
        bad = weight_violations(display, spec.m, spec.rank // 8)
        if bad:
            detail = "; ".join(filter(None, [detail, "inhomogeneous " + ", ".join(bad)]))
        return ok, detail

    return run_check(f"specialization k={k} m={','.join(map(str, m))}", check,
                     asserted=k in ASSERTED_SPECIALIZATIONS)


def specializations_report(trunc: int) -> List[CheckResult]:
    return [specialization_audit(k, m, trunc) for k, cases in SPECIALIZATION_CASES.items() for m in cases]


def niemeier_report(trunc: int) -> List[CheckResult]:
    """Four rank-24 lattices against E4^3 + c Delta24, plus h_l/2 for all n_i = 4."""
    cache = get_cache(trunc)
    e4_cubed = cache.power("E", 3)
    rows = []
    for name, spec, c in NIEMEIER_CASES:
        expected = e4_cubed + cache.delta24.scale(c)

        def check(spec=spec, expected=expected):
            cosets = theta_by_cosets(spec, trunc)
            theorem = theta_by_theorem(spec, trunc, "extended")
            ok_c, detail_c = _compare(cosets, expected, "cosets", "expected")
            ok_t, detail_t = _compare(theorem, expected, "theorem", "expected")
            roots = cosets.coeff(quarters(2)) if cosets.trunc > quarters(2) else None
            detail = "; ".join(filter(None, [detail_c, detail_t, f"roots={roots} (D-part {root_count(spec)})"]))
            return ok_c and ok_t, detail

        rows.append(run_check(f"{name} = E4^3 {'+' if c > 0 else '-'} {abs(c)}*Delta24", check))

    for ell in range(1, 5):
        spec = create_spec(Family.EVEN_8M4, (0,) * (2 * ell))

        def check(spec=spec, ell=ell):
            return _compare(theta_by_cosets(spec, trunc), cache.h(ell).halve_exact(), "cosets", f"h_{ell}/2")

        rows.append(run_check(f"D4^{2 * ell} = h_{ell}/2", check))
    return rows


def counts_report(lmax: int, enumerate_up_to: int = 8) -> List[CheckResult]:
    rows = []
    for ell in range(1, lmax + 1):
        for row in count_checks(ell, enumerate_up_to):
            detail = f"{row.lhs} vs {row.rhs}" + (f" ({row.detail})" if row.detail else "")
            rows.append(CheckResult(row.name, row.passed, row.asserted, detail))
    return rows


def _nondecreasing(k: int, low: int, total_max: int) -> Iterable[tuple[int, ...]]:
    for m in combinations_with_replacement(range(low, total_max + 1), k):
        if sum(m) <= total_max:
            yield m


def theorem_audit_specs(max_rank: int = MAX_AUDIT_RANK) -> List[LatticeSpec]:
    """ODD_8M and EVEN_8M4 specs up to max_rank (m sorted), and FOUR_BLOCK with m_i <= 1."""
    specs = []
    k = 1
    while 8 * k <= max_rank:
        specs.extend(create_spec(Family.ODD_8M, m) for m in _nondecreasing(k, 1, max_rank // 8))
        k += 2
    k = 2
    while 4 * k <= max_rank:
        specs.extend(create_spec(Family.EVEN_8M4, m) for m in _nondecreasing(k, 0, (max_rank - 4 * k) // 8))
        k += 2
    for eps in (0, 1):
        specs.extend(create_spec(Family.FOUR_BLOCK, m, eps) for m in combinations_with_replacement((0, 1), 4))
    return specs


def theorem_report(trunc: int, specs: Sequence[LatticeSpec] | None = None) -> List[CheckResult]:
    """Both readings of each theorem display against the coset sum; only the extended one is asserted."""
    rows = []
    for spec in specs if specs is not None else theorem_audit_specs():
        try:
            cosets = theta_by_cosets(spec, trunc)
        except ThetaGlueError as exc:
            rows.append(CheckResult(spec.describe(), False, True, f"{type(exc).__name__}: {exc}"))
            continue
        for reading in READINGS:
            rows.append(run_check(
                f"{spec.describe()} [{reading}]",
                lambda spec=spec, reading=reading: _compare(
                    theta_by_theorem(spec, trunc, reading), cosets, "theorem", "cosets"),
                asserted=reading == "extended",
            ))
        bad = weight_violations(theorem_terms(spec, "extended"), spec.m, spec.rank // 8)
        rows.append(CheckResult(f"{spec.describe()} [weights]", not bad, True, ", ".join(bad)))
    return rows
