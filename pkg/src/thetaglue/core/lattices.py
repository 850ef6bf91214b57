# Glued D-lattices: glue groups, coset theta series, theorem evaluation and the Gram check.
#
# Vectors are kept in doubled integer coordinates: a vector v of the lattice is
# stored as 2v, so every entry is an integer.

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Sequence

import numpy as np

from .errors import NonIntegerResult, NotDivisible, ThetaGlueError
from .lattice_spec import Family, LatticeSpec
from .modforms import ModformCache, get_cache
from .qseries import QSeries, linear_combination, one, zero
from .symexpand import summand_weights, sym_sum
from .theorems import Display, Reading, even_display, four_block_display, odd_display

logger = logging.getLogger(__name__)


class Coset(str, Enum):
    """Glue class of one D_n component, written as its (x1, x2) bits."""
    O = "O"
    X1 = "X1"
    X2 = "X2"
    X3 = "X3"

    @property
    def bits(self) -> tuple[int, int]:
        return _BITS[self]

    @staticmethod
    def from_bits(b1: int, b2: int) -> "Coset":
        return _FROM_BITS[(b1 & 1, b2 & 1)]

    def __add__(self, other: "Coset") -> "Coset":
        a, b = self.bits, other.bits
        return Coset.from_bits(a[0] ^ b[0], a[1] ^ b[1])


_BITS = {Coset.O: (0, 0), Coset.X1: (1, 0), Coset.X2: (0, 1), Coset.X3: (1, 1)}
_FROM_BITS = {v: k for k, v in _BITS.items()}

CosetLabel = tuple[Coset, ...]

# Four generators of the FOUR_BLOCK glue: X2 at slot i, X3 at two of the other slots.
_FOUR_BLOCK_GENERATORS: tuple[CosetLabel, ...] = (
    (Coset.X2, Coset.O, Coset.X3, Coset.X3),
    (Coset.X3, Coset.X2, Coset.O, Coset.X3),
    (Coset.X3, Coset.X3, Coset.X2, Coset.O),
    (Coset.O, Coset.X3, Coset.X3, Coset.X2),
)


def add_labels(a: CosetLabel, b: CosetLabel) -> CosetLabel:
    return tuple(x + y for x, y in zip(a, b))


def glue_generators(spec: LatticeSpec) -> list[CosetLabel]:
    if spec.family is Family.FOUR_BLOCK:
        return list(_FOUR_BLOCK_GENERATORS)
    return [tuple(Coset.X1 if j == i else Coset.X2 for j in range(spec.k)) for i in range(spec.k)]


def glue_group(spec: LatticeSpec) -> list[CosetLabel]:
    """Every label of the subgroup spanned by the generators, in a fixed order."""
    gens = glue_generators(spec)
    origin = tuple(Coset.O for _ in range(spec.k))
    labels = set()
    for mask in product((0, 1), repeat=len(gens)):
        labels.add(reduce(add_labels, (g for g, bit in zip(gens, mask) if bit), origin))
    return sorted(labels, key=lambda lab: [c.value for c in lab])


def _component_vector(label: Coset, n: int) -> list[int]:
    if label is Coset.O:
        return [0] * n
    if label is Coset.X1:
        return [1] * n
    if label is Coset.X2:
        return [2] + [0] * (n - 1)
    # x1 + x2 shifted back by e_n - e_1, one coordinate at -1/2
    return [-1] + [1] * (n - 1)


def glue_vector(spec: LatticeSpec, label: CosetLabel) -> list[int]:
    """Doubled coordinates of a minimal vector of the glue coset."""
    out = []
    for c, ni in zip(label, spec.n):
        out.extend(_component_vector(c, ni))
    return out


def glue_norm(spec: LatticeSpec, label: CosetLabel) -> Fraction:
    return Fraction(sum(w * w for w in glue_vector(spec, label)), 4)


def root_count(spec: LatticeSpec) -> int:
    """Roots of D_{n_1} + ... + D_{n_k}."""
    return sum(2 * ni * (ni - 1) for ni in spec.n if ni >= 2)


def coset_theta_component(label: Coset, n: int, cache: ModformCache) -> QSeries:
    if n % 2:
        raise ValueError(f"component rank must be even, got {n}")
    t3, t4 = cache.theta_power(3, n), cache.theta_power(4, n)
    if label is Coset.O:
        return (t3 + t4).halve_exact()
    if label is Coset.X2:
        return (t3 - t4).halve_exact()
    return cache.theta_power(2, n).halve_exact()


def assemble(labels: Sequence[CosetLabel], n: Sequence[int], component, trunc: int) -> QSeries:
    """Sum over labels of the product of per-component series given by component(label, n_i)."""
    total = zero(trunc)
    for label in labels:
        term = one(trunc)
        for c, ni in zip(label, n):
            term = term.mul(component(c, ni)).truncate(trunc)
        total = total + term
    return total


def theta_by_cosets(spec: LatticeSpec, trunc: int) -> QSeries:
    cache = get_cache(trunc)
    memo: dict[tuple[Coset, int], QSeries] = {}

    def component(c: Coset, ni: int) -> QSeries:
        if (c, ni) not in memo:
            memo[(c, ni)] = coset_theta_component(c, ni, cache)
        return memo[(c, ni)]

    return assemble(glue_group(spec), spec.n, component, trunc)


def theorem_terms(spec: LatticeSpec, reading: Reading = "literal") -> Display:
    if spec.family is Family.ODD_8M:
        return odd_display(spec.ell)
    if spec.family is Family.EVEN_8M4:
        return even_display(spec.ell, reading)
    return four_block_display(spec.epsilon)


def evaluate_display(display: Display, m: Sequence[int], trunc: int) -> QSeries:
    """Exact value of a display at m; the rational coefficients must cancel to integers."""
    cache = get_cache(trunc)
    pairs = [(term.prefactor_rational, sym_sum(term, m, cache)) for term in display.terms]
    logger.debug("%s: %d terms at m=%s", display.name, len(pairs), list(m))
    try:
        return linear_combination(pairs, trunc)
    except NotDivisible as exc:
        raise NonIntegerResult(f"{display.name} at m={list(m)}: {exc}") from exc


def theta_by_theorem(spec: LatticeSpec, trunc: int, reading: Reading = "literal") -> QSeries:
    return evaluate_display(theorem_terms(spec, reading), spec.m, trunc)


def weight_violations(display: Display, m: Sequence[int], expected: int) -> list[str]:
    """Summands whose weight differs from expected, as 'term i: weight w' strings."""
    bad = []
    for i, term in enumerate(display.terms):
        for w in set(summand_weights(term, m)):
            if w != expected:
                bad.append(f"term {i}: weight {w}")
    return bad


def check_weights(spec: LatticeSpec, reading: Reading = "literal") -> bool:
    """Every summand of the theorem display has weight rank/8."""
    return not weight_violations(theorem_terms(spec, reading), spec.m, spec.rank // 8)


# Gram check

def d_basis(n: int) -> list[list[int]]:
    """Doubled coordinates of e_i - e_{i+1} (i < n) and e_{n-1} + e_n."""
    rows = []
    for i in range(n - 1):
        row = [0] * n
        row[i], row[i + 1] = 2, -2
        rows.append(row)
    if n >= 2:
        row = [0] * n
        row[n - 2] = row[n - 1] = 2
        rows.append(row)
    return rows


def lattice_generators(spec: LatticeSpec) -> list[list[int]]:
    rows = []
    offset = 0
    for ni in spec.n:
        for row in d_basis(ni):
            rows.append([0] * offset + row + [0] * (spec.rank - offset - ni))
        offset += ni
    rows.extend(glue_vector(spec, g) for g in glue_generators(spec))
    return rows


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


def echelon_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Integer row echelon basis of the Z-span of vectors (unimodular row operations only)."""
    basis: list[list[int]] = []
    pivots: list[int] = []
    for vec0 in vectors:
        vec = list(vec0)
        for j in range(dim):
            if not vec[j]:
                continue
            if j not in pivots:
                where = sum(1 for p in pivots if p < j)
                basis.insert(where, vec)
                pivots.insert(where, j)
                break
            row = basis[pivots.index(j)]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for jj in range(j, dim):
                    vec[jj] -= q * row[jj]
            else:
                x, y, g = _xgcd(a, b)
                ag, mbg = a // g, -b // g
                for jj in range(j, dim):
                    aa, bb = row[jj], vec[jj]
                    row[jj] = x * aa + y * bb
                    vec[jj] = mbg * aa + ag * bb
    return basis


def bareiss_det(matrix) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = [list(map(int, row)) for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[size - 1][size - 1]


@dataclass
class GramReport:
    """Outcome of the even-unimodular check.

    Attributes:
        rank: Rank of the Z-span of the generators.
        det: Determinant of the Gram matrix.
        integral: Every Gram entry is an integer.
        even: Every diagonal entry is even.
        error: Message when the check could not be carried out.
    """
    spec: LatticeSpec
    rank: int = 0
    det: Fraction = Fraction(0)
    integral: bool = False
    even: bool = False
    error: str = ""
    gram: list[list[Fraction]] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return not self.error and self.rank == self.spec.rank and self.integral and self.even and self.det == 1


def check_even_unimodular(spec: LatticeSpec) -> GramReport:
    report = GramReport(spec=spec)
    try:
        basis = echelon_basis(lattice_generators(spec), spec.rank)
        report.rank = len(basis)
        if report.rank != spec.rank:
            report.error = f"generators span rank {report.rank}, expected {spec.rank}"
            return report
        b = np.array(basis, dtype=object)
        g4 = b.dot(b.T)
        report.integral = all(int(x) % 4 == 0 for x in g4.flat)
        report.even = all(int(g4[i, i]) % 8 == 0 for i in range(report.rank))
        report.det = Fraction(bareiss_det(g4.tolist()), 4 ** report.rank)
        report.gram = [[Fraction(int(x), 4) for x in row] for row in g4.tolist()]
    except ThetaGlueError as exc:
        report.error = str(exc)
    logger.debug("gram check %s: rank=%d det=%s", spec.describe(), report.rank, report.det)
    return report
