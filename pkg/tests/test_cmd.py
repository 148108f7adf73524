import io
import json

import pytest

from ALGtools.algebras import DoubledAlgebra, M2Algebra
from ALGtools.report import FAIL, PASS, Report
from ALGtools.rings import PrimeField
from REPL.interpreter import CayleyShell, main


def get_instructions(filename):
    with open(f'tests/test_instructions/{filename}.txt') as f:
        return f.readlines()


@pytest.fixture
def kernel_m2_f3():
    return get_instructions('kernel_m2_f3')


@pytest.fixture
def zorn_norm():
    return get_instructions('zorn_norm')


@pytest.fixture
def compact_octonions():
    return get_instructions('compact_octonions')


@pytest.fixture
def bad_files():
    return get_instructions('bad_files')


@pytest.fixture
def norm_theorem_f3():
    return get_instructions('norm_theorem_f3')


@pytest.fixture
def shell():
    result = CayleyShell()
    result.file = io.StringIO()
    return result


def output(shell: CayleyShell) -> str:
    return shell.file.getvalue()


def test_kernel_session(shell: CayleyShell, kernel_m2_f3):
    shell.cmdqueue.extend(kernel_m2_f3)
    shell.cmdloop()

    assert shell.spec == M2Algebra(PrimeField(3))
    assert [r.claim for r in shell.reports] == ['group-SL1']
    assert shell.reports[0].counts['order'] == 24
    text = output(shell)
    assert 'lemma-ker-f' in text
    assert 'Goodbye!' in text


def test_invalid_claim_for_kind_is_reported(shell: CayleyShell, zorn_norm):
    shell.cmdqueue.extend(zorn_norm)
    shell.cmdloop()

    # the last verify fails with InvalidAlgebra, so the reports are those of norm-mult
    assert [r.claim for r in shell.reports] == ['norm-mult']
    assert shell.reports[0].verdict == PASS
    assert 'Error: kind:' in output(shell)


def test_compact_octonions(shell: CayleyShell, compact_octonions):
    shell.cmdqueue.extend(compact_octonions)
    shell.cmdloop()

    assert isinstance(shell.spec, DoubledAlgebra)
    assert shell.reports[0].verdict == PASS
    assert shell.reports[0].counts['pairs'] == 25
    assert 'lambda = -1' in output(shell)


def test_bad_files(shell: CayleyShell, bad_files):
    shell.cmdqueue.extend(bad_files)
    shell.cmdloop()

    assert shell.spec is None
    text = output(shell)
    assert 'Error: lambda:' in text
    assert 'Error while validating file:' in text
    assert "File 'algebras/missing.json' does not exist" in text
    assert 'No algebra loaded' in text


def test_norm_theorem(shell: CayleyShell, norm_theorem_f3):
    shell.cmdqueue.extend(norm_theorem_f3)
    shell.cmdloop()

    assert shell.reports[0].claim == 'thm-isometric'
    assert shell.reports[0].verdict == PASS
    assert 'aut-g2 (slow)' in output(shell)


def test_debug_reraises():
    shell = CayleyShell(debug=True)
    shell.file = io.StringIO()
    shell.cmdqueue.extend(['norm_theorem Z\n', 'exit\n'])
    with pytest.raises(Exception):
        shell.cmdloop()


class TestMain:
    def test_verify_writes_json(self, tmp_path, capsys):
        out = tmp_path / 'reports.json'
        code = main(['verify', '--claim', 'lemma-ker-f', '--algebra', 'algebras/m2_f3.json', '--json', str(out)])
        assert code == 0
        reports = [Report.from_dict(r) for r in json.loads(out.read_text())]
        assert reports[0].verdict == PASS
        assert reports[0].counts['kernel'] == 2
        assert list(json.loads(out.read_text())[0]) == ['claim', 'ring', 'algebra', 'verdict', 'reason', 'counts',
                                                        'witness', 'details', 'timing']
        assert 'lemma-ker-f' in capsys.readouterr().out

    def test_reports_are_reproducible(self, tmp_path):
        first, second = tmp_path / 'first.json', tmp_path / 'second.json'
        for out in (first, second):
            main(['verify', '--claim', 'all', '--algebra', 'algebras/m2_f2.json', '--json', str(out)])
        comparable = [[Report.from_dict(r).comparable() for r in json.loads(out.read_text())] for out in (first, second)]
        assert comparable[0] == comparable[1]

    def test_group(self, capsys):
        assert main(['group', '--which', 'O', '--algebra', 'algebras/m2_f2.json']) == 0
        assert 'order=72' in capsys.readouterr().out

    @pytest.mark.parametrize('argv', [
        ['verify', '--claim', 'lemma-foo', '--algebra', 'algebras/m2_f3.json'],
        ['verify', '--claim', 'lemma-ker-f', '--algebra', 'algebras/zorn_f2.json'],
        ['verify', '--claim', 'norm-mult', '--algebra', 'algebras/invalid_kind.json'],
        ['verify', '--claim', 'norm-mult', '--algebra', 'algebras/invalid_lambda.json'],
        ['verify', '--claim', 'norm-mult', '--algebra', 'algebras/missing.json'],
        ['verify', '--claim', 'norm-mult', '--algebra', 'algebras/m2_f3.json', '--exhaustive', '--samples', '5'],
        ['norm-theorem', '--ring', 'Z'],
        ['norm-theorem', '--ring', 'F4'],
        ['group', '--which', 'SL2', '--algebra', 'algebras/m2_f3.json'],
        ['group', '--which', 'SL1', '--algebra', 'algebras/m2_q.json'],
        [],
    ])
    def test_usage_errors(self, argv):
        assert main(argv) == 2

    def test_strict_turns_skipped_into_failure(self):
        argv = ['verify', '--claim', 'rep-counts', '--algebra', 'algebras/zorn_f3.json', '--budget', '100']
        assert main(argv) == 0
        assert main(argv + ['--strict']) == 1


def test_exit_code_on_failure():
    from ALGtools.report import exit_code
    assert exit_code([Report('x', 'F2', 'm2/F2', PASS), Report('y', 'F2', 'm2/F2', FAIL)]) == 1
