"""
Composition algebras as first-class values.

Four kinds are supported, each a frozen dataclass deriving from `AlgebraSpec`:

    M2Algebra          2x2 matrices, basis (E11, E12, E21, E22)
    QuaternionAlgebra  structure constants i^2 = a, j^2 = b, ij = -ji, basis (1, i, j, ij)
    ZornAlgebra        Zorn vector matrices [[d1, u], [w, d2]], basis (d1, d2, u1, u2, u3, w1, w2, w3)
    DoubledAlgebra     (x, y)(u, v) = (xu + lambda v sigma(y), sigma(x) v + u y) on base + base

Every kind defines its multiplication law once (`reference_mul`), together with
closed-form norm and trace. Multiplication of elements goes through a structure
constant table derived from the reference law; conjugation is uniformly
x -> trace(x) 1 - x.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, ClassVar, Iterator, Sequence, Union

from ALGtools import exceptions
from ALGtools.mat2 import Mat2, mat2_mul
from ALGtools.rings import Raw, RingElem, RingSpec


if TYPE_CHECKING:
    from ALGtools.visitor import GenericVisitor


RawVector = tuple


@dataclass(frozen=True)
class AlgebraSpec:
    """
    Base class of the algebra kinds. Subclasses set `kind`, `rank` and
    `associative`, and implement the raw-level law, norm and trace.
    """
    ring: RingSpec

    kind: ClassVar[str] = 'undefined'
    rank: ClassVar[int] = 0
    associative: ClassVar[bool] = False
    basis_names: ClassVar[tuple[str, ...]] = ()

    def accept(self, visitor: GenericVisitor):
        """
        Accepts a visitor object, and calls its visit* method,
        as determined by this spec's type.
        """
        return getattr(visitor, f'visit{type(self).__name__}')(self)

    # Raw-level definitions, implemented per kind

    def one_raw(self) -> RawVector:
        raise NotImplementedError

    def reference_mul(self, x: RawVector, y: RawVector) -> RawVector:
        raise NotImplementedError

    def norm_raw(self, x: RawVector) -> Raw:
        raise NotImplementedError

    def trace_raw(self, x: RawVector) -> Raw:
        raise NotImplementedError

    # Element construction

    def element(self, coords: Sequence[Union[RingElem, Raw]]) -> AlgElem:
        """
        Build an element from coordinates in the canonical basis, given as
        RingElems of this spec's ring or as raw values.

        Raises
        ------
        RankMismatch
            If the number of coordinates differs from the rank
        RingMismatch
            If a RingElem coordinate belongs to another ring
        """
        if len(coords) != self.rank:
            raise exceptions.RankMismatch(f"{self.kind} has rank {self.rank}, got {len(coords)} coordinates")
        values = []
        for c in coords:
            if isinstance(c, RingElem):
                if c.ring != self.ring:
                    raise exceptions.RingMismatch(f"coordinate over {c.ring} in an algebra over {self.ring}")
                values.append(c.value)
            else:
                values.append(self.ring.reduce(c))
        return AlgElem(self, tuple(values))

    def _raw(self, values: Sequence[Raw]) -> AlgElem:
        return AlgElem(self, tuple(values))

    @property
    def one(self) -> AlgElem:
        return self._raw(self.one_raw())

    @property
    def zero(self) -> AlgElem:
        return self._raw((0,) * self.rank)

    def scalar(self, t: RingElem) -> AlgElem:
        return self.one.scale(t)

    def basis(self) -> tuple[AlgElem, ...]:
        return tuple(self._raw(tuple(int(i == k) for i in range(self.rank))) for k in range(self.rank))

    def basis_element(self, name: str) -> AlgElem:
        return self.basis()[self.basis_names.index(name)]

    @property
    def is_octonion(self) -> bool:
        return self.rank == 8

    def __str__(self) -> str:
        from ALGtools.visitor import SpecDescriber
        return SpecDescriber().run(self)


@dataclass(frozen=True)
class M2Algebra(AlgebraSpec):
    kind: ClassVar[str] = 'm2'
    rank: ClassVar[int] = 4
    associative: ClassVar[bool] = True
    basis_names: ClassVar[tuple[str, ...]] = ('E11', 'E12', 'E21', 'E22')

    def one_raw(self) -> RawVector:
        return (1, 0, 0, 1)

    def reference_mul(self, x: RawVector, y: RawVector) -> RawVector:
        product = mat2_mul(self.to_mat2(self._raw(x)), self.to_mat2(self._raw(y)))
        return tuple(c.value for c in product.coords)

    def norm_raw(self, x: RawVector) -> Raw:
        return self.ring.reduce(x[0] * x[3] - x[1] * x[2])

    def trace_raw(self, x: RawVector) -> Raw:
        return self.ring.reduce(x[0] + x[3])

    def from_mat2(self, m: Mat2) -> AlgElem:
        return self.element(m.coords)

    def to_mat2(self, x: AlgElem) -> Mat2:
        return Mat2.from_coords(x.coords)


@dataclass(frozen=True)
class QuaternionAlgebra(AlgebraSpec):
    """
    The quaternion algebra (a, b): i^2 = a, j^2 = b, ij = -ji.
    a, b and 2 must be units of the ring.
    """
    a: RingElem
    b: RingElem

    kind: ClassVar[str] = 'quaternion'
    rank: ClassVar[int] = 4
    associative: ClassVar[bool] = True
    basis_names: ClassVar[tuple[str, ...]] = ('1', 'i', 'j', 'ij')

    def __post_init__(self):
        for name in ('a', 'b'):
            param = getattr(self, name)
            if param.ring != self.ring:
                raise exceptions.InvalidAlgebra(name, f"parameter over {param.ring} in an algebra over {self.ring}")
            if not param.is_unit:
                raise exceptions.InvalidAlgebra(name, f"{param} is not a unit in {self.ring}")
        if not self.ring.two_is_unit:
            raise exceptions.InvalidAlgebra('ring', f"2 is not a unit in {self.ring}")

    def one_raw(self) -> RawVector:
        return (1, 0, 0, 0)

    def reference_mul(self, x: RawVector, y: RawVector) -> RawVector:
        a, b = self.a.value, self.b.value
        x0, x1, x2, x3 = x
        y0, y1, y2, y3 = y
        reduce = self.ring.reduce
        return (reduce(x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3),
                reduce(x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2),
                reduce(x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1),
                reduce(x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1))

    def norm_raw(self, x: RawVector) -> Raw:
        a, b = self.a.value, self.b.value
        x0, x1, x2, x3 = x
        return self.ring.reduce(x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3)

    def trace_raw(self, x: RawVector) -> Raw:
        return self.ring.reduce(2 * x[0])


def _dot(v: Sequence, w: Sequence):
    return v[0] * w[0] + v[1] * w[1] + v[2] * w[2]


def _cross(v: Sequence, w: Sequence) -> tuple:
    return (v[1] * w[2] - v[2] * w[1],
            v[2] * w[0] - v[0] * w[2],
            v[0] * w[1] - v[1] * w[0])


@dataclass(frozen=True)
class ZornAlgebra(AlgebraSpec):
    """
    Split octonions as Zorn vector matrices [[d1, u], [w, d2]]:

        [[a, v], [w, b]] [[a', v'], [w', b']] =
            [[aa' + <v, w'>,          a v' + b' v - w x w'],
             [a' w + b w' + v x v',   bb' + <w, v'>       ]]

    with norm ab - <v, w>.
    """
    kind: ClassVar[str] = 'zorn'
    rank: ClassVar[int] = 8
    basis_names: ClassVar[tuple[str, ...]] = ('d1', 'd2', 'u1', 'u2', 'u3', 'w1', 'w2', 'w3')

    def one_raw(self) -> RawVector:
        return (1, 1, 0, 0, 0, 0, 0, 0)

    def reference_mul(self, x: RawVector, y: RawVector) -> RawVector:
        a, b, v, w = x[0], x[1], x[2:5], x[5:8]
        a_, b_, v_, w_ = y[0], y[1], y[2:5], y[5:8]
        w_cross = _cross(w, w_)
        v_cross = _cross(v, v_)
        top_right = tuple(a * v_[k] + b_ * v[k] - w_cross[k] for k in range(3))
        bottom_left = tuple(a_ * w[k] + b * w_[k] + v_cross[k] for k in range(3))
        reduce = self.ring.reduce
        return tuple(reduce(c) for c in (a * a_ + _dot(v, w_), b * b_ + _dot(w, v_)) + top_right + bottom_left)

    def norm_raw(self, x: RawVector) -> Raw:
        return self.ring.reduce(x[0] * x[1] - _dot(x[2:5], x[5:8]))

    def trace_raw(self, x: RawVector) -> Raw:
        return self.ring.reduce(x[0] + x[1])


@dataclass(frozen=True)
class DoubledAlgebra(AlgebraSpec):
    """
    The doubling of a quaternion-type base algebra B with parameter lambda:

        (x, y)(u, v) = (xu + lambda v sigma(y), sigma(x) v + u y)
        n(x, y) = Nrd(x) - lambda Nrd(y)

    At lambda = 1 over M2 this is the split octonion algebra M2 + M2 with
    norm det(x) - det(y).
    """
    base: AlgebraSpec
    lam: RingElem

    kind: ClassVar[str] = 'doubled'
    rank: ClassVar[int] = 8

    def __post_init__(self):
        if not isinstance(self.base, (M2Algebra, QuaternionAlgebra)):
            raise exceptions.InvalidAlgebra('base', f"can't double a {self.base.kind} algebra (m2 or quaternion only)")
        if self.base.ring != self.ring:
            raise exceptions.InvalidAlgebra('base', f"base over {self.base.ring} in an algebra over {self.ring}")
        if self.lam.ring != self.ring:
            raise exceptions.InvalidAlgebra('lambda', f"parameter over {self.lam.ring} in an algebra over {self.ring}")
        if not self.lam.is_unit:
            raise exceptions.InvalidAlgebra('lambda', f"{self.lam} is not a unit in {self.ring}")

    @classmethod
    def split(cls, ring: RingSpec) -> DoubledAlgebra:
        """
        Doubled(M2, 1), the split octonions M2 + M2.
        """
        return cls(ring, M2Algebra(ring), ring.one)

    @property
    def basis_names(self) -> tuple[str, ...]:
        return tuple(f'{name}{side}' for side in ('', "'") for name in self.base.basis_names)

    def one_raw(self) -> RawVector:
        return self.base.one_raw() + (0,) * self.base.rank

    def split_raw(self, x: RawVector) -> tuple[RawVector, RawVector]:
        half = self.base.rank
        return x[:half], x[half:]

    def reference_mul(self, x: RawVector, y: RawVector) -> RawVector:
        base = self.base
        x1, y1 = (base._raw(h) for h in self.split_raw(x))
        u1, v1 = (base._raw(h) for h in self.split_raw(y))
        first = x1 * u1 + (v1 * alg_conj(y1)).scale(self.lam)
        second = alg_conj(x1) * v1 + u1 * y1
        return first.values + second.values

    def norm_raw(self, x: RawVector) -> Raw:
        first, second = self.split_raw(x)
        return self.ring.reduce(self.base.norm_raw(first) - self.lam.value * self.base.norm_raw(second))

    def trace_raw(self, x: RawVector) -> Raw:
        return self.base.trace_raw(self.split_raw(x)[0])

    def pair(self, x: AlgElem, y: AlgElem) -> AlgElem:
        """
        The element (x, y) built from two elements of the base algebra
        """
        if x.spec != self.base or y.spec != self.base:
            raise exceptions.SpecMismatch(f"pair components must lie in {self.base}")
        return self._raw(x.values + y.values)

    def halves(self, x: AlgElem) -> tuple[AlgElem, AlgElem]:
        first, second = self.split_raw(x.values)
        return self.base._raw(first), self.base._raw(second)


@dataclass(frozen=True)
class AlgElem:
    """
    An element of a composition algebra: raw canonical coordinates in the
    spec's canonical basis. Use `coords` for the RingElem view.
    """
    spec: AlgebraSpec
    values: RawVector

    @property
    def coords(self) -> tuple[RingElem, ...]:
        ring = self.spec.ring
        return tuple(RingElem(ring, v) for v in self.values)

    def _check(self, other: AlgElem) -> None:
        if not isinstance(other, AlgElem):
            raise TypeError(f"expected an AlgElem, got {type(other).__name__}")
        if other.spec != self.spec:
            raise exceptions.SpecMismatch(f"can't combine elements of {self.spec} and {other.spec}")

    def __add__(self, other: AlgElem) -> AlgElem:
        self._check(other)
        reduce = self.spec.ring.reduce
        return AlgElem(self.spec, tuple(reduce(x + y) for x, y in zip(self.values, other.values)))

    def __sub__(self, other: AlgElem) -> AlgElem:
        self._check(other)
        reduce = self.spec.ring.reduce
        return AlgElem(self.spec, tuple(reduce(x - y) for x, y in zip(self.values, other.values)))

    def __neg__(self) -> AlgElem:
        reduce = self.spec.ring.reduce
        return AlgElem(self.spec, tuple(reduce(-x) for x in self.values))

    def __mul__(self, other: AlgElem) -> AlgElem:
        return alg_mul(self, other)

    def scale(self, t: Union[RingElem, Raw]) -> AlgElem:
        if isinstance(t, RingElem):
            if t.ring != self.spec.ring:
                raise exceptions.RingMismatch(f"scalar over {t.ring} for an algebra over {self.spec.ring}")
            t = t.value
        reduce = self.spec.ring.reduce
        return AlgElem(self.spec, tuple(reduce(t * x) for x in self.values))

    @property
    def is_zero(self) -> bool:
        return not any(self.values)

    def __str__(self) -> str:
        return '(' + ', '.join(str(c) for c in self.coords) + ')'


@lru_cache(maxsize=None)
def structure_constants(spec: AlgebraSpec) -> tuple:
    """
    Structure constants of the algebra's multiplication, derived from its
    reference law: table[i][j] lists the (k, c) with e_i e_j = sum c e_k.
    """
    basis = [b.values for b in spec.basis()]
    return tuple(tuple(tuple((k, c) for k, c in enumerate(spec.reference_mul(ei, ej)) if c != 0)
                       for ej in basis)
                 for ei in basis)


def mul_raw(spec: AlgebraSpec, x: RawVector, y: RawVector) -> RawVector:
    """
    Product of raw coordinate vectors via the structure constants
    """
    table = structure_constants(spec)
    out = [0] * spec.rank
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = table[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            product = xi * yj
            for k, c in row[j]:
                out[k] += c * product
    reduce = spec.ring.reduce
    return tuple(reduce(v) for v in out)


def alg_mul(x: AlgElem, y: AlgElem) -> AlgElem:
    """
    Product in the algebra.

    Raises
    ------
    SpecMismatch
        If x and y belong to different algebras
    """
    x._check(y)
    return AlgElem(x.spec, mul_raw(x.spec, x.values, y.values))


def alg_norm(x: AlgElem) -> RingElem:
    return RingElem(x.spec.ring, x.spec.norm_raw(x.values))


def alg_trace(x: AlgElem) -> RingElem:
    return RingElem(x.spec.ring, x.spec.trace_raw(x.values))


def alg_conj(x: AlgElem) -> AlgElem:
    """
    Conjugation x -> trace(x) 1 - x
    """
    return x.spec.one.scale(x.spec.trace_raw(x.values)) - x


def alg_inv(x: AlgElem) -> AlgElem:
    """
    Inverse n(x)^-1 conj(x).

    Raises
    ------
    NotInvertible
        When the norm of x is not a unit
    """
    norm = alg_norm(x)
    if not norm.is_unit:
        raise exceptions.NotInvertible(f"norm of {x} is {norm}, not a unit")
    return alg_conj(x).scale(norm.inverse())


def iter_elements(spec: AlgebraSpec) -> Iterator[AlgElem]:
    """
    Lazy `alg_enumerate`.
    """
    spec.ring.require_finite()
    for values in itertools.product(spec.ring.raw_elements(), repeat=spec.rank):
        yield AlgElem(spec, values)


def alg_enumerate(spec: AlgebraSpec) -> tuple[AlgElem, ...]:
    """
    All |R|^rank elements in lexicographic coordinate order.

    Raises
    ------
    InfiniteRing
        For algebras over Z and Q
    """
    return tuple(iter_elements(spec))


def algebra_size(spec: AlgebraSpec) -> int:
    return spec.ring.order ** spec.rank


def random_element(spec: AlgebraSpec, rng: random.Random) -> AlgElem:
    return AlgElem(spec, tuple(spec.ring.random_raw(rng) for _ in range(spec.rank)))


def zorn_doubled_iso(x: AlgElem) -> AlgElem:
    """
    The fixed isomorphism from Zorn vector matrices onto Doubled(M2, 1).

    [[d1, u], [w, d2]] goes to (X, Y) with X = [[d1, u1], [w1, d2]] and
    Y = [[w2, -w3], [u3, u2]]: the matrices with vectors along the first axis
    form the M2 summand, and the element with u2 = w2 = 1 plays the role of (0, I).
    """
    if not isinstance(x.spec, ZornAlgebra):
        raise exceptions.SpecMismatch(f"expected a Zorn algebra element, got {x.spec}")
    d1, d2, u1, u2, u3, w1, w2, w3 = x.values
    target = DoubledAlgebra.split(x.spec.ring)
    return target.element((d1, u1, w1, d2, w2, -w3, u3, u2))


def doubled_zorn_iso(x: AlgElem) -> AlgElem:
    """
    Inverse of `zorn_doubled_iso`.
    """
    spec = x.spec
    if not (isinstance(spec, DoubledAlgebra) and spec == DoubledAlgebra.split(spec.ring)):
        raise exceptions.SpecMismatch(f"expected a Doubled(M2, 1) element, got {spec}")
    x11, x12, x21, x22, y11, y12, y21, y22 = x.values
    return ZornAlgebra(spec.ring).element((x11, x22, x12, y22, y21, x21, y11, -y12))
