import itertools
import random

import pytest

from ALGtools import exceptions
from ALGtools.algebras import (DoubledAlgebra, M2Algebra, QuaternionAlgebra, ZornAlgebra, alg_conj, alg_enumerate,
                               alg_inv, alg_norm, alg_trace, algebra_size, doubled_zorn_iso, random_element,
                               zorn_doubled_iso)
from ALGtools.rings import Integers, ModRing, PrimeField, Rationals


F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)
Q = Rationals()


def quaternion(ring, a, b):
    return QuaternionAlgebra(ring, ring.elem(a), ring.elem(b))


@pytest.fixture(params=['m2', 'quaternion', 'zorn', 'doubled', 'compact'])
def spec(request):
    return {
        'm2': M2Algebra(Integers()),
        'quaternion': quaternion(Q, 2, -3),
        'zorn': ZornAlgebra(Integers()),
        'doubled': DoubledAlgebra.split(Integers()),
        'compact': DoubledAlgebra(Q, quaternion(Q, -1, -1), Q.elem(-1)),
    }[request.param]


class TestConstruction:
    def test_quaternion_parameter_not_a_unit(self):
        with pytest.raises(exceptions.InvalidAlgebra) as info:
            quaternion(ModRing(9), 3, 2)
        assert info.value.field == 'a'

    def test_quaternion_needs_two_invertible(self):
        with pytest.raises(exceptions.InvalidAlgebra) as info:
            quaternion(F2, 1, 1)
        assert info.value.field == 'ring'

    def test_doubled_lambda_not_a_unit(self):
        ring = ModRing(9)
        with pytest.raises(exceptions.InvalidAlgebra) as info:
            DoubledAlgebra(ring, M2Algebra(ring), ring.elem(3))
        assert info.value.field == 'lambda'

    def test_doubled_octonions_rejected(self):
        with pytest.raises(exceptions.InvalidAlgebra) as info:
            DoubledAlgebra(F3, ZornAlgebra(F3), F3.one)
        assert info.value.field == 'base'

    def test_wrong_rank(self):
        with pytest.raises(exceptions.RankMismatch):
            M2Algebra(F3).element([1, 2, 3])

    def test_mixing_algebras(self):
        with pytest.raises(exceptions.SpecMismatch):
            M2Algebra(F3).one * M2Algebra(F5).one


class TestIdentities:
    def test_one_is_neutral(self, spec):
        rng = random.Random(1)
        for _ in range(20):
            x = random_element(spec, rng)
            assert spec.one * x == x == x * spec.one

    def test_norm_is_multiplicative(self, spec):
        rng = random.Random(2)
        for _ in range(50):
            x, y = random_element(spec, rng), random_element(spec, rng)
            assert alg_norm(x * y) == alg_norm(x) * alg_norm(y)

    def test_conjugate(self, spec):
        rng = random.Random(3)
        for _ in range(50):
            x = random_element(spec, rng)
            assert x * alg_conj(x) == spec.scalar(alg_norm(x))
            assert x * x - x.scale(alg_trace(x)) + spec.scalar(alg_norm(x)) == spec.zero

    def test_basis_associativity(self, spec):
        basis = spec.basis()
        associates = all((x * y) * z == x * (y * z) for x, y, z in itertools.product(basis, repeat=3))
        assert associates == spec.associative


class TestConjugation:
    @pytest.mark.parametrize('spec', [M2Algebra(F3), ZornAlgebra(F2)])
    def test_anti_involution_exhaustive(self, spec):
        elements = alg_enumerate(spec)
        conj = {x: alg_conj(x) for x in elements}
        assert all(alg_conj(conj[x]) == x for x in elements)
        assert all(conj[x * y] == conj[y] * conj[x] for x, y in itertools.product(elements, repeat=2))

    def test_anti_involution_sampled(self):
        spec = DoubledAlgebra(Q, quaternion(Q, -1, -1), Q.elem(-1))
        rng = random.Random(4)
        for _ in range(100):
            x, y = random_element(spec, rng), random_element(spec, rng)
            assert alg_conj(alg_conj(x)) == x
            assert alg_conj(x * y) == alg_conj(y) * alg_conj(x)


def test_inverse():
    spec = quaternion(Q, -1, -1)
    x = spec.element([1, 2, 3, 4])
    assert x * alg_inv(x) == spec.one


def test_inverse_of_null_element():
    spec = M2Algebra(F3)
    with pytest.raises(exceptions.NotInvertible):
        alg_inv(spec.basis_element('E12'))


def test_m2_is_matrix_algebra():
    spec = M2Algebra(F5)
    e12, e21 = spec.basis_element('E12'), spec.basis_element('E21')
    assert e12 * e21 == spec.basis_element('E11')
    assert e12 * e12 == spec.zero


def test_enumeration_size():
    spec = M2Algebra(F3)
    elements = alg_enumerate(spec)
    assert len(elements) == algebra_size(spec) == 81
    assert len(set(elements)) == 81


def test_enumerate_infinite():
    with pytest.raises(exceptions.InfiniteRing):
        alg_enumerate(M2Algebra(Q))


class TestZornDoubled:
    def test_unital(self):
        assert zorn_doubled_iso(ZornAlgebra(F3).one) == DoubledAlgebra.split(F3).one

    def test_multiplicative_over_integers(self):
        zorn = ZornAlgebra(Integers())
        rng = random.Random(4)
        for _ in range(100):
            x, y = random_element(zorn, rng), random_element(zorn, rng)
            assert zorn_doubled_iso(x * y) == zorn_doubled_iso(x) * zorn_doubled_iso(y)
            assert alg_norm(zorn_doubled_iso(x)) == alg_norm(x)
            assert doubled_zorn_iso(zorn_doubled_iso(x)) == x

    def test_wrong_source(self):
        with pytest.raises(exceptions.SpecMismatch):
            zorn_doubled_iso(M2Algebra(F3).one)
