# Direct enumeration of D-lattice coset vectors: the identity-free theta oracle.
#
# A component vector is enumerated in doubled coordinates w. Integer cosets (O, X2)
# have every w even, half-integer cosets (X1, X3) every w odd. Its exponent in
# quarters is sum(w^2).

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import BoundsTooLarge
from .lattice_spec import LatticeSpec
from .lattices import Coset, assemble, glue_group
from .qseries import QSeries, from_terms

logger = logging.getLogger(__name__)

DEFAULT_MAX_POINTS = 50_000_000


def _values(half: bool, limit: int) -> list[int]:
    """Doubled coordinate values with w^2 <= limit, in increasing |w|."""
    start = 1 if half else 0
    out = []
    for a in range(start, isqrt(max(limit, 0)) + 1, 2):
        out.extend([a] if a == 0 else [a, -a])
    return out


@lru_cache(maxsize=None)
def ball_count(n: int, limit: int, half: bool) -> int:
    """Exact number of candidate vectors with sum(w^2) <= limit, both parities."""
    if limit < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    for a in range(1 if half else 0, isqrt(limit) + 1, 2):
        total += (1 if a == 0 else 2) * ball_count(n - 1, limit - a * a, half)
    return total


def _walk(n: int, limit: int, half: bool) -> np.ndarray:
    """counts[e, p] for every vector with sum(w^2) = e <= limit and parity class p."""
    counts = np.zeros((limit + 1, 2), dtype=np.int64)
    values = _values(half, limit)
    # integer cosets: parity of sum(w/2); half-integer cosets: parity of sum((w-1)/2)
    steps = [(w, w * w, ((w - 1) // 2 if half else w // 2) & 1) for w in values]

    def walk(pos: int, norm: int, parity: int) -> None:
        if pos == n:
            counts[norm, parity] += 1
            return
        room = limit - norm
        for w, sq, p in steps:
            if sq > room:
                break
            walk(pos + 1, norm + sq, parity ^ p)

    walk(0, 0, 0)
    return counts


@lru_cache(maxsize=32)
def component_series(n: int, trunc: int, half: bool) -> tuple[QSeries, QSeries]:
    """Enumerated theta series of the two cosets of one parity type.

    Returns (O, X2) for integer cosets and (X1, X3) for half-integer cosets.
    """
    counts = _walk(n, trunc - 1, half)
    pairs = [[(e, int(counts[e, p])) for e in range(trunc) if counts[e, p]] for p in (0, 1)]
    return from_terms(pairs[0], trunc), from_terms(pairs[1], trunc)


def guard(n: int, trunc: int, half: bool, max_points: int) -> int:
    points = ball_count(n, trunc - 1, half)
    if points > max_points:
        raise BoundsTooLarge(
            f"rank {n} {'half-integer' if half else 'integer'} cosets below {trunc} quarters: "
            f"{points} candidate vectors exceed the limit of {max_points}"
        )
    return points


def theta_by_enumeration(spec: LatticeSpec, trunc: int, max_points: int = DEFAULT_MAX_POINTS,
                         max_workers: int | None = None) -> QSeries:
    labels = glue_group(spec)
    jobs = sorted({(ni, c in (Coset.X1, Coset.X3)) for label in labels for c, ni in zip(label, spec.n)})
    for ni, half in jobs:
        points = guard(ni, trunc, half, max_points)
        logger.debug("enumerating rank %d (%s): %d vectors", ni, "half" if half else "integer", points)

    if max_workers is None:
        max_workers = min(4, os.cpu_count() or 1)
    t0 = time.perf_counter()
    results: dict[tuple[int, bool], tuple[QSeries, QSeries]] = {}
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = {executor.submit(component_series, ni, trunc, half): (ni, half) for ni, half in jobs}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    logger.debug("enumeration of %d component types took %.1f ms", len(jobs), (time.perf_counter() - t0) * 1000.0)

    def component(c: Coset, ni: int) -> QSeries:
        if c in (Coset.O, Coset.X2):
            even, odd = results[(ni, False)]
            return even if c is Coset.O else odd
        even, odd = results[(ni, True)]
        return even if c is Coset.X1 else odd

    return assemble(labels, spec.n, component, trunc)
