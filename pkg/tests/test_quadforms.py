import itertools

import pytest

from ALGtools import exceptions
from ALGtools.algebras import DoubledAlgebra, M2Algebra, QuaternionAlgebra
from ALGtools.budget import WorkBudget
from ALGtools.linmap import LinMap
from ALGtools.quadforms import (QuadForm, diagonalize, find_isometry, form_eval, form_from_algebra, is_definite,
                                is_isotropic, is_nonsingular, iter_isometries, polar_eval, preserves,
                                representation_counts, substitute)
from ALGtools.rings import Integers, ModRing, PrimeField, Rationals, ring_enumerate


F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)
Q = Rationals()


def quaternion(ring, a, b):
    return QuaternionAlgebra(ring, ring.elem(a), ring.elem(b))


@pytest.fixture
def det_form():
    return form_from_algebra(M2Algebra(F3))


class TestForms:
    def test_det_form_coefficients(self, det_form):
        # det = x1 x4 - x2 x3
        expected = QuadForm.from_coefficients(F3, 4, {(0, 3): 1, (1, 2): -1})
        assert det_form == expected

    def test_quaternion_form_is_diagonal(self):
        form = form_from_algebra(quaternion(F5, 2, 3))
        assert form.is_diagonal
        assert list(form.diagonal_entries()) == [1, 3, 2, 1]

    def test_eval_matches_norm(self):
        spec = M2Algebra(Integers())
        form = form_from_algebra(spec)
        x = spec.element([2, 3, 5, 7])
        assert form_eval(form, x) == Integers().elem(-1)

    def test_polar_eval(self, det_form):
        x = [F3.elem(v) for v in (1, 0, 0, 0)]
        y = [F3.elem(v) for v in (0, 0, 0, 1)]
        assert polar_eval(det_form, x, y) == F3.one

    @pytest.mark.parametrize('a, b, c', list(itertools.product(range(3), repeat=3)))
    def test_polarization_rank_two(self, a, b, c):
        form = QuadForm.from_coefficients(F3, 2, {(0, 0): a, (0, 1): b, (1, 1): c})
        vectors = list(itertools.product(ring_enumerate(F3), repeat=2))
        for x, y in itertools.product(vectors, repeat=2):
            total = [s + t for s, t in zip(x, y)]
            assert polar_eval(form, x, y) == form_eval(form, total) - form_eval(form, x) - form_eval(form, y)

    def test_rank_mismatch(self, det_form):
        with pytest.raises(exceptions.RankMismatch):
            form_eval(det_form, [F3.one, F3.one])

    def test_ring_mismatch(self, det_form):
        with pytest.raises(exceptions.RingMismatch):
            form_eval(det_form, [F5.one] * 4)

    @pytest.mark.parametrize('spec', [M2Algebra(F2), M2Algebra(F3), quaternion(F5, 2, 3),
                                      DoubledAlgebra.split(F5), DoubledAlgebra.split(Integers())])
    def test_norm_forms_are_nonsingular(self, spec):
        assert is_nonsingular(form_from_algebra(spec))

    def test_singular_form(self):
        assert not is_nonsingular(QuadForm.diagonal(F3, [1, 0]))


class TestSubstitution:
    def test_identity(self, det_form):
        assert substitute(det_form, LinMap.identity(F3, 4)) == det_form

    def test_substitution_evaluates(self, det_form):
        T = LinMap.from_rows(F3, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 2], [1, 0, 0, 1]])
        substituted = substitute(det_form, T)
        for v in [(1, 0, 0, 0), (1, 2, 0, 1), (2, 2, 1, 1)]:
            assert substituted.evaluate_raw(v) == det_form.evaluate_raw(T.apply_raw(v))

    def test_transpose_preserves_det(self, det_form):
        # X -> X^T swaps E12 and E21
        T = LinMap.from_rows(F3, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
        assert preserves(det_form, T)


class TestRepresentationCounts:
    def test_det_form_over_f2(self):
        counts = representation_counts(form_from_algebra(M2Algebra(F2)))
        assert {c.value: n for c, n in counts.items()} == {0: 10, 1: 6}

    def test_total(self, det_form):
        assert sum(representation_counts(det_form).values()) == 81

    def test_budget(self, det_form):
        with pytest.raises(exceptions.BudgetExceeded):
            representation_counts(det_form, WorkBudget(80))

    def test_infinite(self):
        with pytest.raises(exceptions.InfiniteRing):
            representation_counts(form_from_algebra(M2Algebra(Q)))


class TestDiagonalize:
    def test_diagonal_form_is_substitution(self, det_form):
        result = diagonalize(det_form)
        assert result.form.is_diagonal
        assert result.transform.is_invertible
        assert substitute(det_form, result.transform) == result.form

    def test_rationals(self):
        form = form_from_algebra(M2Algebra(Q))
        result = diagonalize(form)
        assert substitute(form, result.transform) == result.form

    def test_char_two(self):
        with pytest.raises(exceptions.CharTwo):
            diagonalize(form_from_algebra(M2Algebra(F2)))

    def test_singular(self):
        with pytest.raises(exceptions.Singular):
            diagonalize(QuadForm.diagonal(F5, [1, 0, 2]))

    @pytest.mark.parametrize('ring', [ModRing(9), Integers()])
    def test_needs_a_field(self, ring):
        with pytest.raises(exceptions.UnsupportedRing):
            diagonalize(QuadForm.diagonal(ring, [1, 1]))


class TestIsotropy:
    def test_finite_witness(self):
        form = form_from_algebra(quaternion(F3, -1, -1))
        verdict = is_isotropic(form)
        assert verdict.isotropic
        assert any(c.value for c in verdict.witness)
        assert form_eval(form, verdict.witness) == F3.zero

    def test_m2_over_q(self):
        form = form_from_algebra(M2Algebra(Q))
        verdict = is_isotropic(form)
        assert verdict.isotropic
        assert form_eval(form, verdict.witness) == Q.zero

    def test_hamilton_is_anisotropic(self):
        form = form_from_algebra(quaternion(Q, -1, -1))
        assert is_isotropic(form).anisotropic
        assert is_definite(form)

    def test_compact_octonions(self):
        spec = DoubledAlgebra(Q, quaternion(Q, -1, -1), Q.elem(-1))
        assert is_isotropic(form_from_algebra(spec)).anisotropic

    def test_split_octonions_over_z(self):
        form = form_from_algebra(DoubledAlgebra.split(Integers()))
        verdict = is_isotropic(form)
        assert verdict.isotropic
        assert form_eval(form, verdict.witness) == Integers().zero


class TestIsometries:
    def test_orthogonal_group_of_det_form(self):
        form = form_from_algebra(M2Algebra(F2))
        isometries = list(iter_isometries(form, form))
        assert len(isometries) == 72
        assert all(preserves(form, T) for T in isometries)

    def test_isometry_between_quaternion_forms(self):
        T = find_isometry(form_from_algebra(quaternion(F5, 2, 3)), form_from_algebra(M2Algebra(F5)))
        assert T is not None
        assert substitute(form_from_algebra(M2Algebra(F5)), T) == form_from_algebra(quaternion(F5, 2, 3))

    def test_no_isometry_between_different_diagonals(self):
        # x^2 + y^2 represents 0 nontrivially over F5, x^2 + 2y^2 doesn't
        assert find_isometry(QuadForm.diagonal(F5, [1, 1]), QuadForm.diagonal(F5, [1, 2])) is None

    def test_budget(self, det_form):
        with pytest.raises(exceptions.BudgetExceeded):
            find_isometry(det_form, det_form, WorkBudget(50))

    def test_rank_mismatch(self, det_form):
        with pytest.raises(exceptions.RankMismatch):
            find_isometry(det_form, QuadForm.diagonal(F3, [1, 1]))

    def test_sum_and_difference_of_squares_over_f5(self):
        # -1 = 2^2 in F5
        q1, q2 = QuadForm.diagonal(F5, [1, 1]), QuadForm.diagonal(F5, [1, -1])
        T = find_isometry(q1, q2)
        assert T is not None
        assert substitute(q2, T) == q1


def diagonal_corpus(ring, nonsquare, rank):
    forms = [QuadForm.diagonal(ring, list(entries))
             for entries in itertools.combinations_with_replacement([1, nonsquare], rank)]
    return list(itertools.product(forms, repeat=2))


@pytest.mark.parametrize('ring, nonsquare, rank', [
    (F3, 2, 1), (F3, 2, 2), (F3, 2, 3), (F3, 2, 4),
    (F5, 2, 1), (F5, 2, 2), (F5, 2, 3),
    pytest.param(F5, 2, 4, marks=pytest.mark.slow),
])
def test_isometry_iff_same_counts(ring, nonsquare, rank):
    for q1, q2 in diagonal_corpus(ring, nonsquare, rank):
        T = find_isometry(q1, q2)
        assert (T is not None) == (representation_counts(q1) == representation_counts(q2))
        if T is not None:
            assert substitute(q2, T) == q1
            if q1 == q2:
                assert preserves(q1, T)
