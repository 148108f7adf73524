"""
Isomorphism search between quaternion algebras, and zero-divisor witnesses
separating split algebras from division algebras.
"""
from __future__ import annotations

import logging
from typing import Iterator, Optional

from ALGtools import exceptions
from ALGtools.algebras import AlgElem, AlgebraSpec, M2Algebra, QuaternionAlgebra, alg_conj, iter_elements, mul_raw
from ALGtools.budget import WorkBudget
from ALGtools.linmap import LinMap
from ALGtools.quadforms import form_from_algebra, is_isotropic


logger = logging.getLogger(__name__)


def _require_quaternion_target(dst: AlgebraSpec) -> None:
    if not isinstance(dst, (M2Algebra, QuaternionAlgebra)):
        raise exceptions.InvalidAlgebra('kind', f"expected an m2 or quaternion algebra, got {dst}")


def iter_quaternion_isomorphisms(src: QuaternionAlgebra, dst: AlgebraSpec,
                                 budget: Optional[WorkBudget] = None) -> Iterator[LinMap]:
    """
    All algebra isomorphisms from QuaternionSC(a, b) onto `dst`, as matrices
    sending 1, i, j, ij to 1, u, v, uv. The images satisfy u^2 = a, v^2 = b,
    uv = -vu with u and v of trace zero; any such invertible assignment
    extends to an isomorphism.

    Raises
    ------
    RingMismatch
        If the algebras live over different rings
    InfiniteRing
        For algebras over Z and Q
    """
    if not isinstance(src, QuaternionAlgebra):
        raise exceptions.InvalidAlgebra('kind', f"expected a quaternion algebra, got {src}")
    _require_quaternion_target(dst)
    if src.ring != dst.ring:
        raise exceptions.RingMismatch(f"algebras over {src.ring} and {dst.ring}")

    ring = dst.ring
    one = dst.one_raw()
    a_one = tuple(ring.reduce(src.a.value * c) for c in one)
    b_one = tuple(ring.reduce(src.b.value * c) for c in one)

    pure = [x.values for x in iter_elements(dst) if dst.trace_raw(x.values) == 0]
    u_candidates = [u for u in pure if mul_raw(dst, u, u) == a_one]
    v_candidates = [v for v in pure if mul_raw(dst, v, v) == b_one]
    logger.debug("%d candidates for i, %d for j in %s", len(u_candidates), len(v_candidates), dst)

    for u in u_candidates:
        for v in v_candidates:
            if budget is not None:
                budget.spend(1)
            uv = mul_raw(dst, u, v)
            if tuple(ring.reduce(-c) for c in mul_raw(dst, v, u)) != uv:
                continue
            T = LinMap.from_columns(ring, [one, u, v, uv])
            if T.is_invertible:
                yield T


def find_quaternion_isomorphism(src: QuaternionAlgebra, dst: AlgebraSpec,
                                budget: Optional[WorkBudget] = None) -> Optional[LinMap]:
    """
    The first isomorphism src -> dst in deterministic search order, or None
    when there is none.
    """
    return next(iter_quaternion_isomorphisms(src, dst, budget), None)


def is_algebra_isomorphism(src: AlgebraSpec, dst: AlgebraSpec, T: LinMap) -> bool:
    """
    True iff T is invertible, sends 1 to 1 and is multiplicative on every
    pair of basis vectors of src.
    """
    if src.rank != dst.rank or T.n != src.rank:
        raise exceptions.RankMismatch(f"map of rank {T.n} between {src} and {dst}")
    if T.apply_raw(src.one_raw()) != dst.one_raw():
        return False
    images = [T.column(j) for j in range(src.rank)]
    basis = [e.values for e in src.basis()]
    for i, ei in enumerate(basis):
        for j, ej in enumerate(basis):
            if T.apply_raw(mul_raw(src, ei, ej)) != mul_raw(dst, images[i], images[j]):
                return False
    return T.is_invertible


def has_zero_divisor(spec: AlgebraSpec) -> Optional[tuple[AlgElem, AlgElem]]:
    """
    A pair of nonzero elements (x, y) with xy = 0, or None when the norm form
    is certified anisotropic (or undecided over Q).

    M2 always gives the nilpotent E12; otherwise a null vector x of the norm
    gives x conj(x) = n(x) 1 = 0.
    """
    if isinstance(spec, M2Algebra):
        e12 = spec.basis_element('E12')
        return e12, e12
    verdict = is_isotropic(form_from_algebra(spec))
    if not verdict.isotropic:
        return None
    x = spec.element(verdict.witness)
    return x, alg_conj(x)
