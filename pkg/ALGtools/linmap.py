"""
Invertible-matrix plumbing: n x n matrices over a base ring acting on algebra
and form coordinates with the column convention (Tv)_i = sum_j T_ij v_j.

Exact determinants, inverses and ranks are delegated to sympy's DomainMatrix.
Matrices over Z/n and F_p are lifted to ZZ; since the determinant and the
adjugate are integer polynomials in the entries, reducing the integer results
modulo n gives the answer over the residue ring.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from sympy import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from ALGtools import exceptions
from ALGtools.rings import RATIONALS, Raw, RingElem, RingSpec


if TYPE_CHECKING:
    from ALGtools.algebras import AlgElem, AlgebraSpec


def _domain_matrix(ring: RingSpec, rows: Sequence[Sequence[Raw]]) -> DomainMatrix:
    n = len(rows)
    if ring.variant == RATIONALS:
        entries = [[QQ(int(v.numerator), int(v.denominator)) for v in row] for row in rows]
        return DomainMatrix(entries, (n, len(rows[0]) if rows else 0), QQ)
    entries = [[ZZ(int(v)) for v in row] for row in rows]
    return DomainMatrix(entries, (n, len(rows[0]) if rows else 0), ZZ)


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def ring_det(ring: RingSpec, rows: Sequence[Sequence[Raw]]) -> Raw:
    """
    Determinant of a square matrix of raw canonical values.
    """
    if not rows:
        return ring.reduce(1)
    det = _domain_matrix(ring, rows).det()
    if ring.variant == RATIONALS:
        return Fraction(int(det.numerator), int(det.denominator))
    return ring.reduce(int(det))


def ring_inverse(ring: RingSpec, rows: Sequence[Sequence[Raw]]) -> tuple:
    """
    Inverse of a square matrix of raw canonical values.

    Raises
    ------
    NotInvertible
        When the determinant is not a unit of the ring
    """
    det = ring_det(ring, rows)
    if not ring.is_unit_raw(det):
        raise exceptions.NotInvertible(f"determinant {det} is not a unit in {ring}")

    matrix = _domain_matrix(ring, rows)
    inverse = matrix.convert_to(QQ).inv().to_Matrix()
    n = len(rows)
    if ring.variant == RATIONALS:
        return tuple(tuple(_to_fraction(inverse[i, j]) for j in range(n)) for i in range(n))

    # adj(M) = det_Z(M) M^-1 is integral; scale by the inverse of det mod n
    integer_det = int(matrix.det())
    scale = ring.inv_raw(ring.reduce(integer_det))
    return tuple(tuple(ring.reduce(scale * int(_to_fraction(inverse[i, j]) * integer_det)) for j in range(n))
                 for i in range(n))


def rank_mod_p(p: int, rows: Sequence[Sequence[int]]) -> int:
    """
    Rank of an integer matrix reduced modulo a prime p
    """
    field = GF(p)
    n = len(rows)
    entries = [[field(int(v) % p) for v in row] for row in rows]
    return DomainMatrix(entries, (n, len(rows[0]) if rows else 0), field).rank()


@dataclass(frozen=True)
class LinMap:
    """
    An n x n matrix over a base ring, stored as raw canonical values row by
    row. Equality is entry-wise, so LinMaps can be collected in sets.
    """
    ring: RingSpec
    rows: tuple

    def __post_init__(self):
        n = len(self.rows)
        if any(len(row) != n for row in self.rows):
            raise exceptions.RankMismatch(f"LinMap needs a square matrix, got {n} rows of lengths {[len(r) for r in self.rows]}")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence[Raw]]) -> LinMap:
        return cls(ring, tuple(tuple(ring.reduce(v) for v in row) for row in rows))

    @classmethod
    def from_columns(cls, ring: RingSpec, columns: Sequence[Sequence[Raw]]) -> LinMap:
        n = len(columns)
        return cls(ring, tuple(tuple(ring.reduce(columns[j][i]) for j in range(n)) for i in range(n)))

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> LinMap:
        return cls(ring, tuple(tuple(ring.reduce(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def of_algebra_map(cls, spec: AlgebraSpec, images: Sequence[AlgElem]) -> LinMap:
        """
        The matrix whose j-th column is the image of the j-th basis vector
        """
        return cls.from_columns(spec.ring, [image.values for image in images])

    def entry(self, i: int, j: int) -> RingElem:
        return RingElem(self.ring, self.rows[i][j])

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def apply_raw(self, v: Sequence[Raw]) -> tuple:
        if len(v) != self.n:
            raise exceptions.RankMismatch(f"vector of length {len(v)} for a map of rank {self.n}")
        reduce = self.ring.reduce
        return tuple(reduce(sum(t * x for t, x in zip(row, v) if t and x)) for row in self.rows)

    def apply(self, x: AlgElem) -> AlgElem:
        """
        Apply to the coordinates of an algebra element
        """
        if x.spec.ring != self.ring:
            raise exceptions.RingMismatch(f"map over {self.ring} applied to an element over {x.spec.ring}")
        return type(x)(x.spec, self.apply_raw(x.values))

    def __matmul__(self, other: LinMap) -> LinMap:
        """
        Composition: (self @ other) v = self (other v)
        """
        if other.ring != self.ring:
            raise exceptions.RingMismatch(f"can't compose maps over {self.ring} and {other.ring}")
        if other.n != self.n:
            raise exceptions.RankMismatch(f"can't compose maps of rank {self.n} and {other.n}")
        columns = [self.apply_raw(other.column(j)) for j in range(self.n)]
        return LinMap.from_columns(self.ring, columns)

    def __sub__(self, other: LinMap) -> LinMap:
        return LinMap.from_rows(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def det(self) -> RingElem:
        return RingElem(self.ring, ring_det(self.ring, self.rows))

    @property
    def is_invertible(self) -> bool:
        return self.det().is_unit

    def inverse(self) -> LinMap:
        """
        Raises
        ------
        NotInvertible
            When the determinant is not a unit
        """
        return LinMap(self.ring, ring_inverse(self.ring, self.rows))

    @property
    def is_identity(self) -> bool:
        return self == LinMap.identity(self.ring, self.n)

    def __str__(self) -> str:
        return '[' + ', '.join('[' + ', '.join(str(v) for v in row) + ']' for row in self.rows) + ']'
