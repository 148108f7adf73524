"""
2x2 matrices over a base ring: the split quaternion algebra M2 with
determinant (reduced norm), trace and the canonical involution
sigma(X) = tr(X) I - X.

Coordinates are ordered (E11, E12, E21, E22) project-wide.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ALGtools import exceptions
from ALGtools.rings import RingElem, RingSpec


@dataclass(frozen=True)
class Mat2:
    e11: RingElem
    e12: RingElem
    e21: RingElem
    e22: RingElem

    def __post_init__(self):
        ring = self.e11.ring
        for entry in (self.e12, self.e21, self.e22):
            if entry.ring != ring:
                raise exceptions.RingMismatch(f"matrix entries over {ring} and {entry.ring}")

    @property
    def ring(self) -> RingSpec:
        return self.e11.ring

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence]) -> Mat2:
        """
        Build a matrix from raw values, e.g. `Mat2.from_rows(Z, [[1, 2], [3, 4]])`
        """
        (a, b), (c, d) = rows
        return cls(ring.elem(a), ring.elem(b), ring.elem(c), ring.elem(d))

    @classmethod
    def from_coords(cls, coords: Sequence[RingElem]) -> Mat2:
        return cls(*coords)

    @classmethod
    def identity(cls, ring: RingSpec) -> Mat2:
        return cls.from_rows(ring, [[1, 0], [0, 1]])

    @classmethod
    def zero(cls, ring: RingSpec) -> Mat2:
        return cls.from_rows(ring, [[0, 0], [0, 0]])

    @classmethod
    def scalar(cls, t: RingElem) -> Mat2:
        zero = t.ring.zero
        return cls(t, zero, zero, t)

    @property
    def coords(self) -> tuple[RingElem, RingElem, RingElem, RingElem]:
        return (self.e11, self.e12, self.e21, self.e22)

    @property
    def rows(self) -> tuple:
        return ((self.e11.value, self.e12.value), (self.e21.value, self.e22.value))

    def __add__(self, other: Mat2) -> Mat2:
        return Mat2(*(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: Mat2) -> Mat2:
        return Mat2(*(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> Mat2:
        return Mat2(*(-x for x in self.coords))

    def __mul__(self, other: Mat2) -> Mat2:
        return mat2_mul(self, other)

    def scale(self, t: RingElem) -> Mat2:
        return Mat2(*(t * x for x in self.coords))

    def __str__(self) -> str:
        return f"[[{self.e11}, {self.e12}], [{self.e21}, {self.e22}]]"


def mat2_mul(x: Mat2, y: Mat2) -> Mat2:
    """
    Matrix product.

    Raises
    ------
    RingMismatch
        If x and y have different base rings
    """
    if x.ring != y.ring:
        raise exceptions.RingMismatch(f"can't multiply matrices over {x.ring} and {y.ring}")
    return Mat2(x.e11 * y.e11 + x.e12 * y.e21,
                x.e11 * y.e12 + x.e12 * y.e22,
                x.e21 * y.e11 + x.e22 * y.e21,
                x.e21 * y.e12 + x.e22 * y.e22)


def mat2_det(x: Mat2) -> RingElem:
    return x.e11 * x.e22 - x.e12 * x.e21


def mat2_trace(x: Mat2) -> RingElem:
    return x.e11 + x.e22


def mat2_sigma(x: Mat2) -> Mat2:
    """
    The canonical involution X -> tr(X) I - X, i.e. the adjugate
    [[d, -b], [-c, a]] of [[a, b], [c, d]].
    """
    return Mat2.scalar(mat2_trace(x)) - x


def mat2_inv(x: Mat2) -> Mat2:
    """
    Inverse det(x)^-1 sigma(x).

    Raises
    ------
    NotInvertible
        When det(x) is not a unit
    """
    det = mat2_det(x)
    if not det.is_unit:
        raise exceptions.NotInvertible(f"det {x} = {det} is not a unit in {x.ring}")
    return mat2_sigma(x).scale(det.inverse())


def mat2_enumerate(ring: RingSpec) -> tuple[Mat2, ...]:
    """
    All matrices over a finite ring, lexicographic in (E11, E12, E21, E22).
    """
    elements = [ring.elem(v) for v in ring.raw_elements()]
    return tuple(Mat2(a, b, c, d) for a in elements for b in elements for c in elements for d in elements)


def sl2_elements(ring: RingSpec) -> tuple[Mat2, ...]:
    return tuple(m for m in mat2_enumerate(ring) if mat2_det(m) == ring.one)
