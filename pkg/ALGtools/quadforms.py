"""
Quadratic forms on free modules of finite rank.

A form of rank n is stored by its upper-triangular coefficients c_ij (i <= j),
q(x) = sum_{i <= j} c_ij x_i x_j; its polar matrix M has M_ii = 2 c_ii and
M_ij = M_ji = c_ij, so that x^T M y = q(x + y) - q(x) - q(y).
"""
from __future__ import annotations

import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple, Optional, Sequence, Union

from ALGtools import exceptions
from ALGtools.algebras import AlgElem, AlgebraSpec
from ALGtools.budget import WorkBudget
from ALGtools.config import SCAN_LIMIT
from ALGtools.linmap import LinMap, ring_det
from ALGtools.rings import RATIONALS, Raw, RingElem, RingSpec, Rationals


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadForm:
    ring: RingSpec
    rank: int
    coeffs: tuple

    def __post_init__(self):
        if self.rank < 1:
            raise exceptions.RankMismatch(f"rank must be positive, got {self.rank}")
        if len(self.coeffs) != self.rank or any(len(row) != self.rank for row in self.coeffs):
            raise exceptions.RankMismatch(f"coefficient table does not match rank {self.rank}")

    @classmethod
    def from_coefficients(cls, ring: RingSpec, rank: int, coefficients: Mapping[tuple[int, int], Raw]) -> QuadForm:
        """
        Build a form from a mapping (i, j) -> c_ij with 0-based indices.
        Entries with i > j are folded onto (j, i).
        """
        table = [[0] * rank for _ in range(rank)]
        for (i, j), c in coefficients.items():
            i, j = min(i, j), max(i, j)
            table[i][j] += c
        return cls(ring, rank, tuple(tuple(ring.reduce(c) for c in row) for row in table))

    @classmethod
    def diagonal(cls, ring: RingSpec, entries: Sequence[Raw]) -> QuadForm:
        return cls.from_coefficients(ring, len(entries), {(i, i): c for i, c in enumerate(entries)})

    def coefficient(self, i: int, j: int) -> RingElem:
        i, j = min(i, j), max(i, j)
        return RingElem(self.ring, self.coeffs[i][j])

    @property
    def is_diagonal(self) -> bool:
        return all(self.coeffs[i][j] == 0 for i in range(self.rank) for j in range(i + 1, self.rank))

    def diagonal_entries(self) -> tuple:
        return tuple(self.coeffs[i][i] for i in range(self.rank))

    def evaluate_raw(self, v: Sequence[Raw]) -> Raw:
        total = 0
        for i, row in enumerate(self.coeffs):
            vi = v[i]
            if not vi:
                continue
            for j in range(i, self.rank):
                c = row[j]
                if c and v[j]:
                    total += c * vi * v[j]
        return self.ring.reduce(total)

    def polar_matrix(self) -> PolarMatrix:
        rows = [[self.coeffs[min(i, j)][max(i, j)] for j in range(self.rank)] for i in range(self.rank)]
        for i in range(self.rank):
            rows[i][i] = 2 * self.coeffs[i][i]
        return PolarMatrix(self.ring, tuple(tuple(self.ring.reduce(c) for c in row) for row in rows))

    def __str__(self) -> str:
        terms = []
        for i in range(self.rank):
            for j in range(i, self.rank):
                c = self.coeffs[i][j]
                if c:
                    monomial = f'x{i + 1}^2' if i == j else f'x{i + 1}*x{j + 1}'
                    terms.append(monomial if c == 1 else f'{c}*{monomial}')
        return ' + '.join(terms) or '0'


@dataclass(frozen=True)
class PolarMatrix:
    """
    Symmetric matrix of the polar form b(x, y) = q(x + y) - q(x) - q(y)
    """
    ring: RingSpec
    rows: tuple

    def bilinear_raw(self, x: Sequence[Raw], y: Sequence[Raw]) -> Raw:
        total = 0
        for i, row in enumerate(self.rows):
            if not x[i]:
                continue
            total += x[i] * sum(m * yj for m, yj in zip(row, y) if m and yj)
        return self.ring.reduce(total)

    def row_image_raw(self, x: Sequence[Raw]) -> tuple:
        """
        M x, so that b(x, y) is the dot product of M x with y
        """
        return tuple(self.ring.reduce(sum(m * xi for m, xi in zip(row, x) if m and xi)) for row in self.rows)

    def det(self) -> RingElem:
        return RingElem(self.ring, ring_det(self.ring, self.rows))


class Diagonalization(NamedTuple):
    """
    A diagonal form together with the change of basis T with form(v) = q(T v)
    """
    form: QuadForm
    transform: LinMap


@dataclass(frozen=True)
class IsotropyVerdict:
    """
    Result of `is_isotropic`: status is one of 'isotropic', 'anisotropic',
    'unknown'; isotropic verdicts carry a nonzero witness with q(witness) = 0.
    """
    status: str
    witness: Optional[tuple] = None

    @property
    def isotropic(self) -> bool:
        return self.status == 'isotropic'

    @property
    def anisotropic(self) -> bool:
        return self.status == 'anisotropic'


def form_from_algebra(spec: AlgebraSpec) -> QuadForm:
    """
    The norm form of a composition algebra in its canonical basis:
    c_ii = n(e_i), c_ij = n(e_i + e_j) - n(e_i) - n(e_j).
    """
    basis = [e.values for e in spec.basis()]
    norms = [spec.norm_raw(e) for e in basis]
    coefficients = {}
    for i in range(spec.rank):
        coefficients[i, i] = norms[i]
        for j in range(i + 1, spec.rank):
            both = tuple(a + b for a, b in zip(basis[i], basis[j]))
            coefficients[i, j] = spec.norm_raw(both) - norms[i] - norms[j]
    return QuadForm.from_coefficients(spec.ring, spec.rank, coefficients)


def _coordinates(q: QuadForm, v: Union[AlgElem, Sequence[RingElem]]) -> tuple:
    if isinstance(v, AlgElem):
        if v.spec.ring != q.ring:
            raise exceptions.RingMismatch(f"element over {v.spec.ring} for a form over {q.ring}")
        values = v.values
    else:
        for c in v:
            if c.ring != q.ring:
                raise exceptions.RingMismatch(f"coordinate over {c.ring} for a form over {q.ring}")
        values = tuple(c.value for c in v)
    if len(values) != q.rank:
        raise exceptions.RankMismatch(f"vector of length {len(values)} for a form of rank {q.rank}")
    return values


def form_eval(q: QuadForm, v: Union[AlgElem, Sequence[RingElem]]) -> RingElem:
    """
    Evaluate q at a coordinate vector (RingElems or an algebra element).

    Raises
    ------
    RankMismatch
        When the vector length differs from the rank
    """
    return RingElem(q.ring, q.evaluate_raw(_coordinates(q, v)))


def polar_eval(q: QuadForm, x: Union[AlgElem, Sequence[RingElem]], y: Union[AlgElem, Sequence[RingElem]]) -> RingElem:
    return RingElem(q.ring, q.polar_matrix().bilinear_raw(_coordinates(q, x), _coordinates(q, y)))


def is_nonsingular(q: QuadForm) -> bool:
    """
    True iff the determinant of the polar matrix is a unit
    """
    return q.polar_matrix().det().is_unit


def substitute(q: QuadForm, T: LinMap) -> QuadForm:
    """
    The form x -> q(T x)
    """
    if T.ring != q.ring:
        raise exceptions.RingMismatch(f"map over {T.ring} for a form over {q.ring}")
    if T.n != q.rank:
        raise exceptions.RankMismatch(f"map of rank {T.n} for a form of rank {q.rank}")
    polar = q.polar_matrix()
    columns = [T.column(j) for j in range(q.rank)]
    coefficients = {}
    for i in range(q.rank):
        coefficients[i, i] = q.evaluate_raw(columns[i])
        for j in range(i + 1, q.rank):
            coefficients[i, j] = polar.bilinear_raw(columns[i], columns[j])
    return QuadForm.from_coefficients(q.ring, q.rank, coefficients)


def preserves(q: QuadForm, T: LinMap) -> bool:
    """
    Whether q(T x) = q(x) identically, compared coefficient-wise
    """
    return substitute(q, T) == q


def iter_vectors(ring: RingSpec, rank: int, budget: Optional[WorkBudget] = None) -> Iterator[tuple]:
    """
    All coordinate vectors over a finite ring in lexicographic order.

    Raises
    ------
    InfiniteRing
        For Z and Q
    BudgetExceeded
        When the scan is larger than the budget (or the default scan limit)
    """
    ring.require_finite()
    size = ring.order ** rank
    if budget is not None:
        budget.spend(size)
    elif size > SCAN_LIMIT:
        raise exceptions.BudgetExceeded(f"scan of {size} vectors over {ring} exceeds the limit {SCAN_LIMIT}")
    return itertools.product(ring.raw_elements(), repeat=rank)


def representation_counts(q: QuadForm, budget: Optional[WorkBudget] = None) -> dict[RingElem, int]:
    """
    For each ring value c, the number of vectors v with q(v) = c. Values that
    are not represented are absent. Keys are in ring order.
    """
    counts = defaultdict(int)
    for v in iter_vectors(q.ring, q.rank, budget):
        counts[q.evaluate_raw(v)] += 1
    return {RingElem(q.ring, value): counts[value] for value in sorted(counts)}


def _orthogonal_basis(q: QuadForm, strict: bool) -> tuple[list, list]:
    """
    Gram-Schmidt with pivot search over a field with 2 invertible. Returns
    the new basis vectors and their q-values. With strict=False a radical
    vector is kept with value 0 instead of raising Singular.
    """
    ring = q.ring
    if not ring.is_field:
        raise exceptions.UnsupportedRing(f"diagonalization needs a field, got {ring}")
    if not ring.two_is_unit:
        raise exceptions.CharTwo(f"2 is not a unit in {ring}")

    n = q.rank
    half = ring.inv_raw(ring.reduce(2))
    polar = q.polar_matrix()

    def gram(u, w):
        return ring.reduce(half * polar.bilinear_raw(u, w))

    def combine(u, f, w):
        return tuple(ring.reduce(a + f * b) for a, b in zip(u, w))

    basis = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    for k in range(n):
        if gram(basis[k], basis[k]) == 0:
            swap = next((j for j in range(k + 1, n) if gram(basis[j], basis[j]) != 0), None)
            partner = next((j for j in range(k + 1, n) if gram(basis[k], basis[j]) != 0), None)
            if swap is not None:
                basis[k], basis[swap] = basis[swap], basis[k]
            elif partner is not None:
                basis[k] = combine(basis[k], 1, basis[partner])
            elif strict:
                raise exceptions.Singular(f"{q} is singular: basis vector {basis[k]} lies in the radical")
            else:
                continue

        pivot = ring.inv_raw(gram(basis[k], basis[k]))
        for j in range(k + 1, n):
            f = gram(basis[k], basis[j])
            if f:
                basis[j] = combine(basis[j], ring.reduce(-f * pivot), basis[k])

    return basis, [q.evaluate_raw(b) for b in basis]


def diagonalize(q: QuadForm) -> Diagonalization:
    """
    Diagonalize a non-singular form over Q or F_p (p odd) by repeated
    completion of the square.

    Returns
    -------
    Diagonalization
        A diagonal form d and an invertible T with d(v) = q(T v) identically

    Raises
    ------
    UnsupportedRing
        If the ring is not a field
    CharTwo
        If 2 is not a unit
    Singular
        If the form has a nonzero radical
    """
    basis, values = _orthogonal_basis(q, strict=True)
    return Diagonalization(QuadForm.diagonal(q.ring, values), LinMap.from_columns(q.ring, basis))


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


def _clear_denominators(v: Sequence[Fraction]) -> tuple:
    scale = math.lcm(*(Fraction(c).denominator for c in v))
    return tuple(int(c * scale) for c in v)


def is_isotropic(q: QuadForm, budget: Optional[WorkBudget] = None) -> IsotropyVerdict:
    """
    Decide whether q has a nonzero null vector.

    Over finite rings the first null vector in lexicographic order is returned
    (never 'unknown'). Over Q (and Z, via Q) the form is diagonalized: equal
    strict signs give 'anisotropic'; a zero entry, or two entries whose ratio
    is minus a rational square, give an explicit integral witness; anything
    else is 'unknown'.
    """
    if q.ring.is_finite:
        for v in iter_vectors(q.ring, q.rank, budget):
            if any(v) and q.evaluate_raw(v) == 0:
                return IsotropyVerdict('isotropic', tuple(RingElem(q.ring, c) for c in v))
        return IsotropyVerdict('anisotropic')

    rational = q if q.ring.variant == RATIONALS else QuadForm(Rationals(), q.rank, tuple(tuple(Fraction(c) for c in row) for row in q.coeffs))
    basis, values = _orthogonal_basis(rational, strict=False)

    witness = None
    for i, d in enumerate(values):
        if d == 0:
            witness = basis[i]
            break
    else:
        for i, j in itertools.combinations(range(q.rank), 2):
            root = _rational_sqrt(-values[j] / values[i])
            if root is not None:
                witness = tuple(root * a + b for a, b in zip(basis[i], basis[j]))
                break

    if witness is not None:
        witness = _clear_denominators(witness)
        logger.debug("isotropic vector %s for %s", witness, q)
        return IsotropyVerdict('isotropic', tuple(RingElem(q.ring, c) for c in witness))
    if all(d > 0 for d in values) or all(d < 0 for d in values):
        return IsotropyVerdict('anisotropic')
    return IsotropyVerdict('unknown')


def iter_isometries(q1: QuadForm, q2: QuadForm, budget: Optional[WorkBudget] = None) -> Iterator[LinMap]:
    """
    All invertible T with q1(v) = q2(T v), by backtracking over the images of
    the basis vectors: T e_i must satisfy q2(T e_i) = c_ii and
    b2(T e_i, T e_j) = c_ij for j < i. Candidates are tried in lexicographic
    order, so the sequence is deterministic.

    Raises
    ------
    RingMismatch, RankMismatch
        If the forms live over different rings or have different ranks
    InfiniteRing
        For forms over Z or Q
    BudgetExceeded
        When the number of candidates tried exceeds the budget
    """
    if q1.ring != q2.ring:
        raise exceptions.RingMismatch(f"forms over {q1.ring} and {q2.ring}")
    if q1.rank != q2.rank:
        raise exceptions.RankMismatch(f"forms of rank {q1.rank} and {q2.rank}")
    q1.ring.require_finite()

    n = q1.rank
    ring = q1.ring
    polar2 = q2.polar_matrix()
    by_value = defaultdict(list)
    for v in iter_vectors(ring, n, budget):
        by_value[q2.evaluate_raw(v)].append(v)

    images: list[tuple] = []
    polar_images: list[tuple] = []

    def extend(i: int) -> Iterator[LinMap]:
        for v in by_value.get(q1.coeffs[i][i], ()):
            if budget is not None:
                budget.spend(1)
            if any(ring.reduce(sum(p * c for p, c in zip(polar_images[j], v))) != q1.coeffs[j][i] for j in range(i)):
                continue
            images.append(v)
            polar_images.append(polar2.row_image_raw(v))
            if i == n - 1:
                candidate = LinMap.from_columns(ring, images)
                if candidate.is_invertible:
                    yield candidate
            else:
                yield from extend(i + 1)
            images.pop()
            polar_images.pop()

    yield from extend(0)


def find_isometry(q1: QuadForm, q2: QuadForm, budget: Optional[WorkBudget] = None) -> Optional[LinMap]:
    """
    The first isometry T with q1(v) = q2(T v) in deterministic search order,
    or None when the exhaustive search proves there is none.
    """
    result = next(iter_isometries(q1, q2, budget), None)
    logger.debug("isometry search %s -> %s: %s", q1, q2, 'found' if result is not None else 'none')
    return result


def is_definite(q: QuadForm) -> bool:
    """
    Definiteness certificate over Q or Z: all diagonal entries of a
    diagonalization share a strict sign.
    """
    return is_isotropic(q).anisotropic and not q.ring.is_finite


__all__ = ['QuadForm', 'PolarMatrix', 'Diagonalization', 'IsotropyVerdict', 'form_from_algebra', 'form_eval',
           'polar_eval', 'is_nonsingular', 'substitute', 'preserves', 'iter_vectors', 'representation_counts',
           'diagonalize', 'is_isotropic', 'iter_isometries', 'find_isometry', 'is_definite']
