# The sym{...} operator: sums over distinct assignments of m-indices to pattern blocks.
#
# Only blocks identical in (role, size, shift) are interchangeable; a pattern with
# two identical h-blocks over four indices therefore has 3 assignments, not 6.

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from typing import Iterator, Sequence

from .errors import NonIntegerResult, NotDivisible, SizeMismatch
from .modforms import ModformCache
from .qseries import QSeries, linear_combination, one

logger = logging.getLogger(__name__)

Block = tuple[int, ...]
Assignment = tuple[Block, ...]

DELTA24_WEIGHT = 3


class Role(str, Enum):
    H = "h"
    RHO = "rho"


@dataclass(frozen=True)
class SymSlot:
    role: Role
    block_size: int
    index_shift: int = 0

    def __post_init__(self):
        if self.block_size < 1:
            raise SizeMismatch(f"block size must be positive, got {self.block_size}")

    @property
    def key(self) -> tuple[str, int, int]:
        return (self.role.value, self.block_size, self.index_shift)

    def index(self, m: Sequence[int], block: Block) -> int:
        return sum(m[i - 1] for i in block) + self.index_shift

    def weight(self, m: Sequence[int], block: Block) -> int:
        """wt h_n = wt rho_n = n."""
        return self.index(m, block)

    def render(self, block: Block) -> str:
        body = "+".join(f"m{i}" for i in block)
        if self.index_shift > 0:
            body += f"+{self.index_shift}"
        elif self.index_shift < 0:
            body += f"{self.index_shift}"
        return f"{self.role.value}[{body}]"


def H(size: int, shift: int = 0) -> SymSlot:
    return SymSlot(Role.H, size, shift)


def RHO(size: int, shift: int = 0) -> SymSlot:
    return SymSlot(Role.RHO, size, shift)


@dataclass(frozen=True)
class SymPattern:
    slots: tuple[SymSlot, ...]
    prefactor_delta_power: int = 0
    prefactor_rational: Fraction = Fraction(1)
    # A verbatim, non-symmetrized index choice (one block per slot).
    fixed: tuple[Block, ...] | None = field(default=None)

    @property
    def k(self) -> int:
        return sum(s.block_size for s in self.slots)

    def with_prefactor(self, c: Fraction | int) -> "SymPattern":
        return SymPattern(self.slots, self.prefactor_delta_power, Fraction(c), self.fixed)

    @staticmethod
    def parse(text: str, delta_power: int = 0) -> "SymPattern":
        """'h:2:+1,rho:1:-1,rho:1:-1' -> three slots."""
        slots = []
        for item in text.split(","):
            parts = item.strip().split(":")
            if len(parts) not in (2, 3):
                raise ValueError(f"bad slot {item!r}, expected role:size[:shift]")
            role = Role(parts[0].lower())
            size = int(parts[1])
            shift = int(parts[2]) if len(parts) == 3 else 0
            slots.append(SymSlot(role, size, shift))
        return SymPattern(tuple(slots), delta_power)


def _choose_blocks(remaining: tuple[int, ...], size: int, count: int, floor: int) -> Iterator[list[Block]]:
    # Unordered choice of `count` disjoint blocks: block minima strictly increase.
    if count == 0:
        yield []
        return
    for block in combinations(remaining, size):
        if block[0] <= floor:
            continue
        rest = tuple(i for i in remaining if i not in block)
        for tail in _choose_blocks(rest, size, count - 1, block[0]):
            yield [block, *tail]


def _groups(pattern: SymPattern) -> list[tuple[tuple[str, int, int], list[int]]]:
    order: dict[tuple[str, int, int], list[int]] = {}
    for pos, slot in enumerate(pattern.slots):
        order.setdefault(slot.key, []).append(pos)
    return list(order.items())


def enumerate_assignments(pattern: SymPattern, k: int) -> list[Assignment]:
    """Every distinct assignment of {1..k} to the pattern's blocks, aligned with pattern.slots."""
    if pattern.fixed is not None:
        return [pattern.fixed]
    if pattern.k != k:
        raise SizeMismatch(f"block sizes add up to {pattern.k}, expected {k}")
    groups = _groups(pattern)
    out: list[Assignment] = []

    def walk(g: int, remaining: tuple[int, ...], chosen: dict[int, Block]):
        if g == len(groups):
            out.append(tuple(chosen[pos] for pos in range(len(pattern.slots))))
            return
        (_, size, _), positions = groups[g]
        for blocks in _choose_blocks(remaining, size, len(positions), 0):
            used = {i for b in blocks for i in b}
            nxt = dict(chosen)
            nxt.update(zip(positions, blocks))
            walk(g + 1, tuple(i for i in remaining if i not in used), nxt)

    walk(0, tuple(range(1, k + 1)), {})
    return out


def assignment_count(pattern: SymPattern) -> int:
    """k! / (prod sizes! * prod multiplicities of identical blocks!)."""
    if pattern.fixed is not None:
        return 1
    sizes = prod(factorial(s.block_size) for s in pattern.slots)
    mults = prod(factorial(c) for c in Counter(s.key for s in pattern.slots).values())
    return factorial(pattern.k) // (sizes * mults)


def _slot_series(slot: SymSlot, n: int, cache: ModformCache) -> QSeries:
    return cache.h(n) if slot.role is Role.H else cache.rho(n)


def sym_sum(pattern: SymPattern, m: Sequence[int], cache: ModformCache) -> QSeries:
    """Delta24^p times the sum over assignments of the slot products; no rational prefactor."""
    total = QSeries({}, cache.trunc)
    for assignment in enumerate_assignments(pattern, len(m)):
        term = one(cache.trunc)
        for slot, block in zip(pattern.slots, assignment):
            term = term.mul(_slot_series(slot, slot.index(m, block), cache)).truncate(cache.trunc)
        total = total + term
    if pattern.prefactor_delta_power:
        total = total.mul(cache.power("D", pattern.prefactor_delta_power)).truncate(cache.trunc)
    return total


def sym_eval(pattern: SymPattern, m: Sequence[int], cache: ModformCache) -> QSeries:
    try:
        return linear_combination([(pattern.prefactor_rational, sym_sum(pattern, m, cache))])
    except NotDivisible as exc:
        raise NonIntegerResult(f"sym term with prefactor {pattern.prefactor_rational}: {exc}") from exc


def summand_weights(pattern: SymPattern, m: Sequence[int]) -> list[int]:
    """Weight of each summand: sum of slot indices plus 3 per Delta24."""
    out = []
    for assignment in enumerate_assignments(pattern, len(m)):
        w = sum(slot.weight(m, block) for slot, block in zip(pattern.slots, assignment))
        out.append(w + DELTA24_WEIGHT * pattern.prefactor_delta_power)
    return out


def render_summand(pattern: SymPattern, assignment: Assignment) -> str:
    factors = [slot.render(block) for slot, block in zip(pattern.slots, assignment)]
    if pattern.prefactor_delta_power == 1:
        factors.insert(0, "Delta24")
    elif pattern.prefactor_delta_power > 1:
        factors.insert(0, f"Delta24^{pattern.prefactor_delta_power}")
    return "*".join(factors)


def expand_symbolic(pattern: SymPattern, k: int) -> list[str]:
    return [render_summand(pattern, a) for a in enumerate_assignments(pattern, k)]
