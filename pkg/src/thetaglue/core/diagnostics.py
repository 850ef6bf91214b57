# Series mismatch records and check-report rows.

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

from .errors import ThetaGlueError
from .qseries import QUARTERS_PER_POWER, QSeries, common_truncation


@dataclass
class Mismatch:
    """One coefficient where two series disagree."""
    exponent: int  # quarters
    left: int
    right: int
    left_name: str = "left"
    right_name: str = "right"

    @property
    def power(self) -> Fraction:
        return Fraction(self.exponent, QUARTERS_PER_POWER)

    def render(self) -> str:
        return f"q^{self.power}: {self.left_name}={self.left} {self.right_name}={self.right}"


def diff_series(left: QSeries, right: QSeries, left_name: str = "left", right_name: str = "right",
                limit: int | None = None) -> List[Mismatch]:
    """Coefficients that differ below the shared truncation, lowest exponent first.

    Args:
        left: First series.
        right: Second series.
        left_name: Label used when rendering.
        right_name: Label used when rendering.
        limit: Stop after this many mismatches.

    Returns:
        List of Mismatch records, empty when the series agree.
    """
    left, right = common_truncation(left, right)
    mismatches = []
    for e in sorted(set(left.terms) | set(right.terms)):
        a, b = left.terms.get(e, 0), right.terms.get(e, 0)
        if a != b:
            mismatches.append(Mismatch(e, a, b, left_name, right_name))
            if limit is not None and len(mismatches) >= limit:
                break
    return mismatches


def format_mismatches(mismatches: List[Mismatch]) -> str:
    return "; ".join(m.render() for m in mismatches)


@dataclass
class CheckResult:
    """One row of a check report.

    Informational rows (asserted=False) are reported but never fail a run.
    """
    name: str
    passed: bool
    asserted: bool = True
    detail: str = ""
    elapsed_ms: float = 0.0

    @property
    def status(self) -> str:
        if self.passed:
            return "PASS"
        return "FAIL" if self.asserted else "INFO"


def all_asserted_pass(rows: List[CheckResult]) -> bool:
    return all(r.passed for r in rows if r.asserted)


def run_check(name: str, check: Callable[[], "bool | tuple[bool, str]"], asserted: bool = True) -> CheckResult:
    """Time one check; a ThetaGlueError raised inside it becomes a failed row."""
    t0 = time.perf_counter()
    try:
        outcome = check()
        passed, detail = outcome if isinstance(outcome, tuple) else (bool(outcome), "")
    except ThetaGlueError as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, passed, asserted, detail, (time.perf_counter() - t0) * 1000.0)
