import itertools

import pytest

from ALGtools import exceptions
from ALGtools.mat2 import Mat2, mat2_det, mat2_enumerate, mat2_inv, mat2_sigma, mat2_trace, sl2_elements
from ALGtools.rings import Integers, ModRing, PrimeField


@pytest.fixture
def ring():
    return Integers()


def test_product(ring):
    x = Mat2.from_rows(ring, [[1, 2], [3, 4]])
    y = Mat2.from_rows(ring, [[0, 1], [1, 0]])
    assert x * y == Mat2.from_rows(ring, [[2, 1], [4, 3]])


def test_det_and_trace(ring):
    x = Mat2.from_rows(ring, [[1, 2], [3, 4]])
    assert mat2_det(x) == ring.elem(-2)
    assert mat2_trace(x) == ring.elem(5)


def test_sigma_is_adjugate(ring):
    x = Mat2.from_rows(ring, [[1, 2], [3, 4]])
    assert mat2_sigma(x) == Mat2.from_rows(ring, [[4, -2], [-3, 1]])
    assert x * mat2_sigma(x) == Mat2.scalar(mat2_det(x))


def test_inverse():
    ring = PrimeField(5)
    x = Mat2.from_rows(ring, [[1, 2], [3, 4]])
    assert x * mat2_inv(x) == Mat2.identity(ring)


def test_not_invertible(ring):
    with pytest.raises(exceptions.NotInvertible):
        mat2_inv(Mat2.from_rows(ring, [[1, 2], [3, 4]]))


def test_ring_mismatch():
    with pytest.raises(exceptions.RingMismatch):
        Mat2.identity(ModRing(3)) * Mat2.identity(PrimeField(3))


@pytest.mark.parametrize('p, order', [(2, 6), (3, 24), (5, 120)])
def test_sl2_order(p, order):
    assert len(sl2_elements(PrimeField(p))) == order


@pytest.mark.parametrize('p', [2, 3])
class TestOverSmallFields:
    def test_sigma_and_det(self, p):
        ring = PrimeField(p)
        matrices = mat2_enumerate(ring)
        for x in matrices:
            assert mat2_sigma(mat2_sigma(x)) == x
            assert mat2_det(mat2_sigma(x)) == mat2_det(x)
            assert x * mat2_sigma(x) == Mat2.scalar(mat2_det(x))
        for x, y in itertools.product(matrices, repeat=2):
            assert mat2_sigma(x * y) == mat2_sigma(y) * mat2_sigma(x)
            assert mat2_det(x * y) == mat2_det(x) * mat2_det(y)

    def test_inverse_by_search(self, p):
        ring = PrimeField(p)
        matrices = mat2_enumerate(ring)
        for x in matrices:
            inverses = [y for y in matrices if x * y == Mat2.identity(ring)]
            if inverses:
                assert [mat2_inv(x)] == inverses
            else:
                with pytest.raises(exceptions.NotInvertible):
                    mat2_inv(x)
