"""
Points of the group schemes attached to a composition algebra, over finite
rings: SL1, mu2, the orthogonal groups of a norm form, the map
f(x, y): q -> x q y^-1, its kernel and image, the orbit map and its section,
the Dickson invariant and algebra automorphisms.

Every enumeration is deterministic: elements come out in the order of the
underlying ring enumeration.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Union

from ALGtools import exceptions
from ALGtools.algebras import (AlgElem, AlgebraSpec, DoubledAlgebra, ZornAlgebra, alg_conj, alg_inv, alg_mul,
                               alg_norm, doubled_zorn_iso, iter_elements, mul_raw, zorn_doubled_iso)
from ALGtools.budget import WorkBudget
from ALGtools.linmap import LinMap, rank_mod_p
from ALGtools.mat2 import Mat2, mat2_det, mat2_inv
from ALGtools.quadforms import QuadForm, form_from_algebra, iter_isometries, preserves
from ALGtools.rings import RingElem, RingSpec, ring_enumerate


logger = logging.getLogger(__name__)

SL1 = 'SL1'
MU2 = 'MU2'
O = 'O'
SO = 'SO'
AUT = 'AUT'
KER_F = 'KER_F'
IMAGE_F = 'IMAGE_F'

# Sets up to this size are checked on every pair
FULL_CHECK_LIMIT = 200
SAMPLED_PAIRS = 2000

Point = Union[AlgElem, RingElem, LinMap, tuple]


def _group_law(source, sample: Point) -> tuple[Callable, Callable, Point]:
    """
    (multiply, invert, identity) for the kind of point in `sample`
    """
    if isinstance(sample, tuple):
        mul, inv, one = _group_law(source, sample[0])
        return (lambda x, y: (mul(x[0], y[0]), mul(x[1], y[1])),
                lambda x: (inv(x[0]), inv(x[1])),
                (one, one))
    if isinstance(sample, AlgElem):
        return alg_mul, alg_inv, sample.spec.one
    if isinstance(sample, RingElem):
        return RingElem.__mul__, RingElem.inverse, sample.ring.one
    if isinstance(sample, LinMap):
        return LinMap.__matmul__, LinMap.inverse, LinMap.identity(sample.ring, sample.n)
    raise TypeError(f"no group law for {type(sample).__name__}")


@dataclass(frozen=True)
class PointSet:
    """
    A finite set of points of a group, in deterministic order.

    Parameters
    ----------
    which : str
        The group, one of SL1, MU2, O, SO, AUT, KER_F, IMAGE_F
    source : AlgebraSpec, QuadForm or RingSpec
        What the group is attached to
    elements : tuple
        The points themselves
    is_group : bool, default True
        When True, the identity, closure and inverses are checked on
        construction (on every pair for small sets, on a seeded sample of
        pairs otherwise)

    Raises
    ------
    NotClosed
        When a group check fails
    """
    which: str
    source: object
    elements: tuple
    is_group: bool = True
    members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'members', frozenset(self.elements))
        if self.is_group and self.elements:
            self.verify()

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.elements)

    def __contains__(self, item) -> bool:
        return item in self.members

    @property
    def order(self) -> int:
        return len(self.elements)

    def pairs_to_check(self) -> Iterator[tuple[Point, Point]]:
        if len(self.elements) <= FULL_CHECK_LIMIT:
            return ((x, y) for x in self.elements for y in self.elements)
        rng = random.Random(0)
        return ((rng.choice(self.elements), rng.choice(self.elements)) for _ in range(SAMPLED_PAIRS))

    def verify(self) -> None:
        mul, inv, identity = _group_law(self.source, self.elements[0])
        if identity not in self.members:
            raise exceptions.NotClosed(f"{self.which} point set of {self.source} lacks the identity")

        inverted = set()
        for x, y in self.pairs_to_check():
            if mul(x, y) not in self.members:
                raise exceptions.NotClosed(f"{self.which} point set of {self.source} is not closed: {x} * {y}")
            if x not in inverted:
                if inv(x) not in self.members:
                    raise exceptions.NotClosed(f"{self.which} point set of {self.source} lacks the inverse of {x}")
                inverted.add(x)
        logger.debug("verified %s point set of %s (%d elements)", self.which, self.source, len(self))


def _require_associative(spec: AlgebraSpec) -> None:
    if not spec.associative:
        raise exceptions.NonAssociativeKind(f"{spec} is not associative; only m2 and quaternion algebras are supported")


def _require_norm_one(x: AlgElem) -> None:
    norm = alg_norm(x)
    if norm != x.spec.ring.one:
        raise exceptions.NotNormOne(f"{x} has norm {norm}, not 1")


def sl1_elements(spec: AlgebraSpec) -> PointSet:
    """
    All norm-one elements. For octonion kinds the set is returned without
    the group checks.

    Raises
    ------
    InfiniteRing
        For algebras over Z and Q
    """
    one = spec.ring.reduce(1)
    elements = tuple(x for x in iter_elements(spec) if spec.norm_raw(x.values) == one)
    return PointSet(SL1, spec, elements, is_group=spec.associative)


def mu2_elements(ring: RingSpec) -> PointSet:
    """
    The square roots of unity {t : t^2 = 1}
    """
    return PointSet(MU2, ring, tuple(t for t in ring_enumerate(ring) if t * t == ring.one))


def f_map(x: AlgElem, y: AlgElem) -> LinMap:
    """
    The matrix of q -> x q y^-1 in the canonical basis.

    Raises
    ------
    SpecMismatch
        If x and y belong to different algebras
    NonAssociativeKind
        For octonion kinds
    NotNormOne
        If x or y does not have norm 1
    """
    x._check(y)
    spec = x.spec
    _require_associative(spec)
    _require_norm_one(x)
    _require_norm_one(y)
    # y^-1 is the conjugate of y since n(y) = 1
    y_inv = alg_conj(y).values
    columns = [mul_raw(spec, mul_raw(spec, x.values, e.values), y_inv) for e in spec.basis()]
    return LinMap.from_columns(spec.ring, columns)


def _sl1_pairs(spec: AlgebraSpec) -> Iterator[tuple[AlgElem, AlgElem]]:
    _require_associative(spec)
    sl1 = sl1_elements(spec).elements
    return ((x, y) for x in sl1 for y in sl1)


def f_kernel(spec: AlgebraSpec) -> PointSet:
    """
    All pairs (x, y) in SL1 x SL1 with f(x, y) = identity, by a scan of
    every pair.

    Raises
    ------
    NonAssociativeKind
        For octonion kinds
    InfiniteRing
        For algebras over Z and Q
    """
    identity = LinMap.identity(spec.ring, spec.rank)
    one = spec.one
    kernel = []
    for x, y in _sl1_pairs(spec):
        # f(x, y) 1 = x y^-1, so the kernel lies on the diagonal
        if x * alg_conj(y) != one:
            continue
        if f_map(x, y) == identity:
            kernel.append((x, y))
    return PointSet(KER_F, spec, tuple(kernel))


def f_image(spec: AlgebraSpec) -> PointSet:
    """
    The distinct maps f(x, y) over SL1 x SL1, in first-seen order
    """
    image = dict.fromkeys(f_map(x, y) for x, y in _sl1_pairs(spec))
    return PointSet(IMAGE_F, spec, tuple(image))


def orbit_map_u(g: LinMap, spec: AlgebraSpec) -> AlgElem:
    """
    g -> g.1

    Raises
    ------
    RankMismatch
        If g does not have the algebra's rank
    """
    if g.n != spec.rank:
        raise exceptions.RankMismatch(f"map of rank {g.n} applied to {spec} of rank {spec.rank}")
    return g.apply(spec.one)


def left_translation_s(q: AlgElem) -> LinMap:
    """
    The matrix of x -> q x, a section of the orbit map on SL1.

    Raises
    ------
    NonAssociativeKind
        For octonion kinds
    NotNormOne
        If q does not have norm 1
    """
    spec = q.spec
    _require_associative(spec)
    _require_norm_one(q)
    return LinMap.from_columns(spec.ring, [mul_raw(spec, q.values, e.values) for e in spec.basis()])


def _check_enumerable(q: QuadForm) -> None:
    q.ring.require_finite()
    size = q.ring.order
    if (q.rank <= 4 and size <= 5) or (q.rank <= 8 and size == 2):
        return
    raise exceptions.BudgetExceeded(f"enumerating O({q}) over {q.ring} is beyond desk scale "
                                    "(rank <= 4 with |R| <= 5, or rank <= 8 with |R| = 2)")


def orthogonal_elements(q: QuadForm, budget: Optional[WorkBudget] = None) -> PointSet:
    """
    All invertible T with q(T x) = q(x), by the constrained backtracking of
    `iter_isometries` with both forms equal to q.

    Raises
    ------
    BudgetExceeded
        Outside the desk-scale envelope or when the budget runs out
    InfiniteRing
        For forms over Z and Q
    """
    _check_enumerable(q)
    elements = tuple(iter_isometries(q, q, budget))
    logger.info("O(%s) over %s has %d elements", q, q.ring, len(elements))
    return PointSet(O, q, elements)


def dickson(g: LinMap, q: QuadForm) -> int:
    """
    The Dickson invariant of an orthogonal map.

    When 2 is a unit this is 0 for det(g) = 1 and 1 for det(g) = -1; over a
    field of characteristic 2 it is rank(g - 1) mod 2.

    Raises
    ------
    NotOrthogonal
        If g is not an invertible map preserving q
    UnsupportedRing
        For characteristic-2 rings that are not fields, and for rings where
        det(g) is neither 1 nor -1
    """
    ring = q.ring
    if g.ring != ring or g.n != q.rank or not g.is_invertible or not preserves(q, g):
        raise exceptions.NotOrthogonal(f"{g} is not in O({q})")

    if ring.two_is_unit:
        det = g.det()
        if det == ring.one:
            return 0
        if det == -ring.one:
            return 1
        raise exceptions.UnsupportedRing(f"det {det} of an orthogonal map over {ring} is not +-1")
    if ring.is_field and ring.characteristic == 2:
        return rank_mod_p(2, (g - LinMap.identity(ring, g.n)).rows) % 2
    raise exceptions.UnsupportedRing(f"no Dickson invariant over {ring}")


def special_orthogonal_elements(q: QuadForm, budget: Optional[WorkBudget] = None,
                                orthogonal: Optional[PointSet] = None) -> PointSet:
    """
    The kernel of the Dickson invariant on O(q). An already enumerated O(q)
    may be passed in.
    """
    orthogonal = orthogonal or orthogonal_elements(q, budget)
    return PointSet(SO, q, tuple(g for g in orthogonal if dickson(g, q) == 0))


def canonical_involution_map(spec: AlgebraSpec) -> LinMap:
    """
    The matrix of x -> trace(x) 1 - x
    """
    return LinMap.of_algebra_map(spec, [alg_conj(e) for e in spec.basis()])


def is_algebra_automorphism(spec: AlgebraSpec, T: LinMap) -> bool:
    """
    True iff T is invertible, fixes 1 and is multiplicative on all pairs of
    basis vectors.

    Raises
    ------
    RankMismatch
        If T does not have the algebra's rank
    """
    if T.n != spec.rank:
        raise exceptions.RankMismatch(f"map of rank {T.n} tested against {spec} of rank {spec.rank}")
    if T.ring != spec.ring:
        raise exceptions.RingMismatch(f"map over {T.ring} tested against {spec}")
    return _is_multiplicative(spec, T) and T.is_invertible


def _is_multiplicative(spec: AlgebraSpec, T: LinMap) -> bool:
    if T.apply_raw(spec.one_raw()) != spec.one.values:
        return False
    images = [T.column(j) for j in range(spec.rank)]
    basis = [e.values for e in spec.basis()]
    for i, ei in enumerate(basis):
        for j, ej in enumerate(basis):
            if T.apply_raw(mul_raw(spec, ei, ej)) != mul_raw(spec, images[i], images[j]):
                return False
    return True


def phi_family(a: Mat2, b: Mat2) -> LinMap:
    """
    The automorphism (X, Y) -> (a X a^-1, a Y b^-1) of Doubled(M2, 1).

    Raises
    ------
    NotNormOne
        If det(a) or det(b) is not 1
    """
    if a.ring != b.ring:
        raise exceptions.RingMismatch(f"matrices over {a.ring} and {b.ring}")
    ring = a.ring
    for m in (a, b):
        if mat2_det(m) != ring.one:
            raise exceptions.NotNormOne(f"det {m} = {mat2_det(m)}, not 1")

    spec = DoubledAlgebra.split(ring)
    base = spec.base
    a_inv, b_inv = mat2_inv(a), mat2_inv(b)
    columns = []
    for e in spec.basis():
        x, y = (base.to_mat2(h) for h in spec.halves(e))
        image = spec.pair(base.from_mat2(a * x * a_inv), base.from_mat2(a * y * b_inv))
        columns.append(image.values)
    return LinMap.from_columns(ring, columns)


def _zorn_automorphisms(spec: ZornAlgebra, budget: Optional[WorkBudget]) -> Iterator[LinMap]:
    """
    Automorphisms of Zorn vector matrices from the images x1, x2, x3 of the
    generators u1, u2, u3. Since w1 = u2 u3, w2 = u3 u1, w3 = u1 u2,
    d1 = u1 (u2 u3) and d2 = 1 - d1, the images of the generators determine
    the map. Candidates must have norm 0 and trace 0 and keep the polar
    values of the generators and their products.
    """
    ring = spec.ring
    form = form_from_algebra(spec)
    polar = form.polar_matrix()
    u1, u2, u3 = (spec.basis_element(name).values for name in ('u1', 'u2', 'u3'))
    one = spec.one_raw()

    def mul(x, y):
        return mul_raw(spec, x, y)

    def b(x, y):
        return polar.bilinear_raw(x, y)

    b12, b31, b32, b3_12 = b(u1, u2), b(u3, u1), b(u3, u2), b(u3, mul(u1, u2))

    candidates = [x.values for x in iter_elements(spec)
                  if any(x.values) and spec.norm_raw(x.values) == 0 and spec.trace_raw(x.values) == 0]
    logger.debug("%d null trace-zero candidates for generator images", len(candidates))

    for x1 in candidates:
        for x2 in candidates:
            if budget is not None:
                budget.spend(1)
            if b(x1, x2) != b12:
                continue
            x12 = mul(x1, x2)
            for x3 in candidates:
                if budget is not None:
                    budget.spend(1)
                if b(x3, x1) != b31 or b(x3, x2) != b32 or b(x3, x12) != b3_12:
                    continue
                x23, x31 = mul(x2, x3), mul(x3, x1)
                d1 = mul(x1, x23)
                if mul(d1, d1) != d1:
                    continue
                d2 = tuple(ring.reduce(o - d) for o, d in zip(one, d1))
                T = LinMap.from_columns(ring, [d1, d2, x1, x2, x3, x23, x31, x12])
                if _is_multiplicative(spec, T) and T.is_invertible:
                    yield T


def split_octonion_isomorphism(ring: RingSpec) -> tuple[LinMap, LinMap]:
    """
    The matrices of the fixed isomorphism Zorn -> Doubled(M2, 1) and of its inverse
    """
    zorn, doubled = ZornAlgebra(ring), DoubledAlgebra.split(ring)
    return (LinMap.of_algebra_map(zorn, [zorn_doubled_iso(e) for e in zorn.basis()]),
            LinMap.of_algebra_map(doubled, [doubled_zorn_iso(e) for e in doubled.basis()]))


def aut_enumerate(spec: AlgebraSpec, budget: Optional[WorkBudget] = None) -> PointSet:
    """
    All algebra automorphisms of the split octonions over F2 (Zorn vector
    matrices or Doubled(M2, 1)), by backtracking over generator images.
    Doubled(M2, 1) is handled through the fixed isomorphism with Zorn.

    Raises
    ------
    UnsupportedRing
        For other algebras or rings
    BudgetExceeded
        When the budget runs out
    """
    ring = spec.ring
    if not ring.is_finite or ring.order != 2 or not ring.is_field:
        raise exceptions.UnsupportedRing(f"automorphism enumeration runs over F2 only, got {ring}")
    zorn = ZornAlgebra(ring)
    if isinstance(spec, ZornAlgebra):
        elements = tuple(_zorn_automorphisms(zorn, budget))
    elif spec == DoubledAlgebra.split(ring):
        to_doubled, to_zorn = split_octonion_isomorphism(ring)
        elements = tuple(to_doubled @ T @ to_zorn for T in _zorn_automorphisms(zorn, budget))
    else:
        raise exceptions.UnsupportedRing(f"automorphism enumeration needs Zorn or Doubled(M2, 1), got {spec}")
    logger.info("Aut(%s) has %d elements", spec, len(elements))
    return PointSet(AUT, spec, elements)


__all__ = ['LinMap', 'PointSet', 'sl1_elements', 'mu2_elements', 'f_map', 'f_kernel', 'f_image', 'orbit_map_u',
           'left_translation_s', 'orthogonal_elements', 'special_orthogonal_elements', 'dickson',
           'canonical_involution_map', 'is_algebra_automorphism', 'phi_family', 'split_octonion_isomorphism', 'aut_enumerate']
