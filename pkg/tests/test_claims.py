import pytest

from ALGtools import claims, exceptions
from ALGtools.algebras import DoubledAlgebra, M2Algebra, QuaternionAlgebra, ZornAlgebra
from ALGtools.claims import (REGISTRY, Claim, Context, Outcome, cmd_group, cmd_norm_theorem, cmd_verify,
                             doubled_block_form, norm_theorem_violated, run_claim)
from ALGtools.config import RunOptions
from ALGtools.grouppoints import f_image
from ALGtools.linmap import LinMap
from ALGtools.quadforms import QuadForm, form_from_algebra
from ALGtools.registry import ClaimRegistry
from ALGtools.report import FAIL, PASS, SKIPPED, encode_witness, exit_code
from ALGtools.rings import Integers, ModRing, PrimeField, Rationals


F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)
Q = Rationals()


def quaternion(ring, a, b):
    return QuaternionAlgebra(ring, ring.elem(a), ring.elem(b))


def verify_one(claim_id, spec, **options):
    reports = cmd_verify(claim_id, spec, RunOptions(**options))
    assert len(reports) == 1
    return reports[0]


class TestRegistry:
    def test_claim_ids(self):
        assert REGISTRY.ids() == ['norm-mult', 'composition', 'alternative', 'moufang', 'associativity',
                                  'nonsingular', 'doubling-norm', 'lemma-ker-f', 'lemma-image-so',
                                  'prop-max-section', 'prop-max-orbit', 'lemma-dickson', 'f-index',
                                  'zorn-doubled-iso', 'phi-family', 'rep-counts', 'aut-g2']

    def test_unknown_claim(self):
        with pytest.raises(exceptions.UnknownClaim):
            cmd_verify('lemma-foo', M2Algebra(F3))

    def test_duplicate_claim(self):
        registry = ClaimRegistry('test')
        registry.add(Claim('x', 'first', lambda spec, ctx: Outcome(True)))
        with pytest.raises(exceptions.DuplicateClaim):
            registry.add(Claim('x', 'second', lambda spec, ctx: Outcome(True)))

    def test_slow_claims_excluded_from_all(self):
        assert 'aut-g2' not in [c.id for c in REGISTRY.selected('all')]
        assert 'aut-g2' in [c.id for c in REGISTRY.selected('all', include_slow=True)]


class TestContext:
    def test_auto_is_exhaustive_on_small_algebras(self):
        ctx = Context(RunOptions())
        assert ctx.exhaustive(ZornAlgebra(F2), 2)
        assert not ctx.exhaustive(ZornAlgebra(F2), 3)
        assert not ctx.exhaustive(M2Algebra(Q), 1)

    def test_exhaustive_needs_finite_ring(self):
        ctx = Context(RunOptions(mode='exhaustive'))
        with pytest.raises(exceptions.InfiniteRing):
            ctx.exhaustive(M2Algebra(Integers()), 1)


class TestIdentityClaims:
    def test_norm_mult_exhaustive_on_zorn(self):
        report = verify_one('norm-mult', ZornAlgebra(F2), mode='exhaustive')
        assert report.verdict == PASS
        assert report.counts['pairs'] == 65536

    @pytest.mark.parametrize('claim_id', ['norm-mult', 'composition', 'alternative', 'moufang'])
    @pytest.mark.parametrize('spec', [
        M2Algebra(Integers()),
        quaternion(Q, -1, -1),
        DoubledAlgebra(Q, quaternion(Q, -1, -1), Q.elem(-1)),
        ZornAlgebra(F3),
    ])
    def test_sampled_identities(self, claim_id, spec):
        report = verify_one(claim_id, spec, mode='samples', samples=50)
        assert report.verdict == PASS

    @pytest.mark.parametrize('claim_id, label, scanned', [('alternative', 'pairs', 2048),
                                                          ('moufang', 'triples', 16384),
                                                          ('composition', 'pairs', 2048)])
    def test_exhaustive_on_zorn(self, claim_id, label, scanned):
        # linear arguments range over the basis only
        report = verify_one(claim_id, ZornAlgebra(F2), mode='exhaustive')
        assert report.verdict == PASS
        assert report.counts[label] == scanned

    def test_associator_witness_on_octonions(self):
        spec = ZornAlgebra(F2)
        report = verify_one('associativity', spec)
        x, y, z = (spec.element([F2.parse_elem(c) for c in coords]) for coords in report.details['associator_witness'])
        assert (x * y) * z != x * (y * z)

    def test_deterministic(self):
        first = verify_one('moufang', ZornAlgebra(F3), samples=30, mode='samples')
        second = verify_one('moufang', ZornAlgebra(F3), samples=30, mode='samples')
        assert first.comparable() == second.comparable()

    @pytest.mark.parametrize('spec, associative', [(M2Algebra(F3), True), (ZornAlgebra(F2), False),
                                                   (DoubledAlgebra.split(Integers()), False)])
    def test_associativity(self, spec, associative):
        report = verify_one('associativity', spec)
        assert report.verdict == PASS
        assert ('associator_witness' in report.details) != associative


class TestStructureClaims:
    @pytest.mark.parametrize('ring', [Integers(), F3, F5])
    def test_doubling_norm(self, ring):
        spec = DoubledAlgebra.split(ring)
        assert form_from_algebra(spec) == doubled_block_form(spec)
        report = verify_one('doubling-norm', spec)
        assert report.verdict == PASS
        assert report.details['nonsingular']

    def test_doubling_norm_needs_doubled_algebra(self):
        with pytest.raises(exceptions.InvalidAlgebra) as info:
            cmd_verify('doubling-norm', M2Algebra(F3))
        assert info.value.field == 'kind'

    def test_nonsingular(self):
        assert verify_one('nonsingular', ZornAlgebra(F2)).verdict == PASS


class TestGroupClaims:
    def test_kernel_on_m2_f3(self):
        report = verify_one('lemma-ker-f', M2Algebra(F3))
        assert report.verdict == PASS
        assert report.counts['kernel'] == 2
        assert report.counts['pairs'] == 576

    def test_kernel_on_quaternions(self):
        report = verify_one('lemma-ker-f', quaternion(F5, 2, 3))
        assert report.verdict == PASS
        assert report.counts['kernel'] == 2

    def test_kernel_on_octonions_is_invalid(self):
        with pytest.raises(exceptions.InvalidAlgebra):
            cmd_verify('lemma-ker-f', ZornAlgebra(F2))

    @pytest.mark.parametrize('claim_id', ['lemma-image-so', 'prop-max-orbit'])
    def test_image_and_orbit(self, claim_id):
        assert verify_one(claim_id, M2Algebra(F3)).verdict == PASS

    def test_section_on_m2_f5(self):
        report = verify_one('prop-max-section', M2Algebra(F5))
        assert report.verdict == PASS
        assert report.counts['sl1'] == 120

    def test_dickson_decomposition(self):
        report = verify_one('lemma-dickson', M2Algebra(F2))
        assert report.verdict == PASS
        assert report.counts == {'O': 72, 'SO': 36, 'work': report.counts['work']}
        assert report.details['decomposition'] == 'verified'

    def test_dickson_over_q(self):
        report = verify_one('lemma-dickson', quaternion(Q, -1, -1))
        assert report.verdict == PASS
        assert report.details['det'] == '-1'

    def test_dickson_over_z_is_skipped(self):
        report = verify_one('lemma-dickson', M2Algebra(Integers()))
        assert report.verdict == SKIPPED
        assert report.reason.startswith('UnsupportedRing')

    @pytest.mark.parametrize('ring, index', [(F2, 1), (F3, 2)])
    def test_f_index(self, ring, index):
        report = verify_one('f-index', M2Algebra(ring))
        assert report.verdict == PASS
        assert report.counts['index'] == index


class TestOctonionClaims:
    def test_zorn_doubled_iso_exhaustive(self):
        report = verify_one('zorn-doubled-iso', ZornAlgebra(F2))
        assert report.verdict == PASS
        assert report.counts == {'pairs': 65536, 'elements': 256, 'work': report.counts['work']}

    def test_phi_family_over_f3(self):
        report = verify_one('phi-family', DoubledAlgebra.split(F3))
        assert report.verdict == PASS
        assert report.counts['pairs'] == 576
        assert report.counts['distinct'] == 288

    def test_phi_family_sampled_over_q(self):
        report = verify_one('phi-family', DoubledAlgebra.split(Q), samples=20)
        assert report.verdict == PASS

    def test_phi_family_needs_split_octonions(self):
        with pytest.raises(exceptions.InvalidAlgebra):
            cmd_verify('phi-family', quaternion(F3, 1, 1))

    def test_rep_counts(self):
        report = verify_one('rep-counts', M2Algebra(F2))
        assert report.verdict == PASS
        assert report.details['counts'] == {'0': 10, '1': 6}

    def test_budget_gives_skipped(self):
        report = verify_one('rep-counts', ZornAlgebra(F3), budget=100)
        assert report.verdict == SKIPPED
        assert report.reason.startswith('BudgetExceeded')
        assert exit_code([report]) == 0
        assert exit_code([report], strict=True) == 1

    @pytest.mark.slow
    def test_aut_g2(self):
        report = verify_one('aut-g2', ZornAlgebra(F2))
        assert report.verdict == PASS
        assert report.counts['order'] == 12096


class TestAll:
    def test_all_on_m2_f2(self):
        reports = cmd_verify('all', M2Algebra(F2))
        verdicts = {r.claim: r.verdict for r in reports}
        assert FAIL not in verdicts.values()
        assert verdicts['doubling-norm'] == SKIPPED
        assert verdicts['lemma-ker-f'] == PASS
        assert exit_code(reports) == 0

    def test_threads_keep_order(self):
        serial = cmd_verify('all', M2Algebra(F2), RunOptions(threads=1))
        parallel = cmd_verify('all', M2Algebra(F2), RunOptions(threads=4))
        assert [r.comparable() for r in serial] == [r.comparable() for r in parallel]


class TestFailures:
    """A deliberately broken claim yields a witness that rechecks as a violation"""
    def test_recheck_confirms_witness(self):
        spec = M2Algebra(F3)
        claim = REGISTRY.get('norm-mult')
        broken = Claim('broken', claim.description,
                       lambda s, ctx: Outcome(False, {}, [s.basis_element('E11'), s.basis_element('E22')]))
        broken.rechecker(lambda s, witness: True)
        report = run_claim(broken, spec, RunOptions())
        assert report.verdict == FAIL
        assert report.witness == [encode_witness(spec.basis_element('E11')), encode_witness(spec.basis_element('E22'))]
        assert report.details['rechecked']

    def test_norm_mult_recheck_rejects_valid_pair(self):
        spec = M2Algebra(F3)
        witness = [encode_witness(spec.basis_element('E12')), encode_witness(spec.basis_element('E21'))]
        assert not REGISTRY.get('norm-mult').recheck(spec, witness)


class TestFailingWitnesses:
    """Claims broken through a module-level helper still report witnesses that recheck"""
    @staticmethod
    def failing(claim_id, spec):
        report = verify_one(claim_id, spec)
        assert report.verdict == FAIL
        assert report.witness != []
        assert report.details['rechecked']
        assert REGISTRY.get(claim_id).recheck(spec, report.witness)
        return report

    def test_associative_kind_with_associator(self, monkeypatch):
        monkeypatch.setattr(claims, '_associator_nonzero', lambda spec, x, y, z: True)
        report = self.failing('associativity', M2Algebra(F3))
        assert len(report.witness) == 3

    def test_octonion_kind_without_associator(self, monkeypatch):
        spec = ZornAlgebra(F2)
        monkeypatch.setattr(claims, '_associator_nonzero', lambda spec, x, y, z: False)
        report = self.failing('associativity', spec)
        assert report.witness == [encode_witness(e) for e in spec.basis()]

    def test_doubling_norm_mismatch(self, monkeypatch):
        spec = DoubledAlgebra.split(F3)
        monkeypatch.setattr(claims, 'doubled_block_form', lambda s: QuadForm.from_coefficients(s.ring, s.rank, {}))
        report = self.failing('doubling-norm', spec)
        # det has no square terms, so the first difference is the E11 E22 cross term
        assert report.witness == [['1', '0', '0', '1'], ['0', '0', '0', '0']]

    def test_f_index_sizes(self, monkeypatch):
        monkeypatch.setattr(claims, 'f_image', lambda spec: f_image(spec).elements[1:])
        report = self.failing('f-index', M2Algebra(F3))
        assert report.witness[0][:3] == ['287', '2', '24']

    def test_zorn_doubled_not_unital(self, monkeypatch):
        spec = ZornAlgebra(F3)
        monkeypatch.setattr(claims, 'zorn_doubled_iso', lambda x: DoubledAlgebra.split(x.spec.ring).zero)
        report = self.failing('zorn-doubled-iso', spec)
        assert report.witness == [encode_witness(spec.one)]

    def test_phi_family_collision(self, monkeypatch):
        monkeypatch.setattr(claims, 'phi_family', lambda a, b: LinMap.identity(a.ring, 8))
        report = self.failing('phi-family', DoubledAlgebra.split(F3))
        assert len(report.witness) == 4

    def test_phi_family_split_class(self, monkeypatch):
        def tagged(a, b):
            # a distinct map per pair, so -(a, b) and (a, b) never agree
            rows = [[c.value for c in a.coords + b.coords]] + [[0] * 8 for _ in range(7)]
            return LinMap.from_rows(a.ring, rows)
        monkeypatch.setattr(claims, 'phi_family', tagged)
        monkeypatch.setattr(claims, '_phi_fails', lambda a, b, *elements: False)
        report = self.failing('phi-family', DoubledAlgebra.split(F3))
        a, b, c, d = report.witness
        assert [F3.parse_elem(x) for x in c] == [-F3.parse_elem(x) for x in a]
        assert [F3.parse_elem(x) for x in d] == [-F3.parse_elem(x) for x in b]

    def test_rep_counts_total(self, monkeypatch):
        monkeypatch.setattr(claims, 'representation_counts', lambda form, budget=None: {form.ring.elem(0): 1})
        report = self.failing('rep-counts', M2Algebra(F2))
        assert report.witness == [['1', '16']]

    def test_rep_counts_substitution(self, monkeypatch):
        monkeypatch.setattr(claims, 'substitute', lambda form, T: QuadForm.diagonal(form.ring, [0] * form.rank))
        report = self.failing('rep-counts', M2Algebra(F2))
        assert report.witness[1] == ['0', '10', '16']

    def test_aut_g2_missing_phi(self, monkeypatch):
        monkeypatch.setattr(claims, 'aut_enumerate', lambda spec, budget=None: [LinMap.identity(F2, 8)])
        report = self.failing('aut-g2', ZornAlgebra(F2))
        assert report.reason == "phi-family element missing from the enumeration"

    def test_aut_g2_order(self, monkeypatch):
        monkeypatch.setattr(claims, 'aut_enumerate', lambda spec, budget=None: list(set(claims.phi_images(spec))))
        report = self.failing('aut-g2', ZornAlgebra(F2))
        assert report.witness[0][1] == '12096'


class TestNormTheorem:
    @pytest.mark.parametrize('ring', [F3, F5])
    def test_single_class(self, ring):
        report = cmd_norm_theorem(ring)
        assert report.verdict == PASS
        assert report.counts['isomorphism_classes'] == report.counts['isometry_classes'] == 1
        assert report.details['split'] == [True]
        assert report.details['representation_counts_consistent']

    def test_rationals(self):
        report = cmd_norm_theorem(Q)
        assert report.verdict == PASS
        assert report.details['zero_divisor'] is not None

    def test_integers(self):
        with pytest.raises(exceptions.InfiniteRing):
            cmd_norm_theorem(Integers())

    def test_char_two(self):
        with pytest.raises(exceptions.CharTwo):
            cmd_norm_theorem(F2)

    def test_recheck(self):
        assert not norm_theorem_violated(F5, [['1', '1'], ['2', '3']])

    @pytest.mark.slow
    @pytest.mark.parametrize('ring', [PrimeField(7), ModRing(9)])
    def test_larger_rings(self, ring):
        assert cmd_norm_theorem(ring).verdict == PASS


class TestGroupCommand:
    @pytest.mark.parametrize('which, spec, order', [
        ('SL1', M2Algebra(F5), 120),
        ('O', M2Algebra(F2), 72),
        ('SO', M2Algebra(F2), 36),
        ('MU2', M2Algebra(ModRing(8)), 4),
    ])
    def test_orders(self, which, spec, order):
        report = cmd_group(which, spec)
        assert report.verdict == PASS
        assert report.counts['order'] == order

    def test_list_elements(self):
        report = cmd_group('MU2', M2Algebra(F5), list_elements=True)
        assert report.details['elements'] == [['1'], ['4']]

    def test_out_of_envelope_is_skipped(self):
        assert cmd_group('O', ZornAlgebra(F3)).verdict == SKIPPED

    def test_infinite(self):
        with pytest.raises(exceptions.InfiniteRing):
            cmd_group('SL1', M2Algebra(Q))

    @pytest.mark.slow
    def test_aut(self):
        assert cmd_group('AUT', ZornAlgebra(F2)).counts['order'] == 12096
