import glob
import json

import jsonschema
import pytest

from ALGtools import ALGparser, exceptions
from ALGtools.algebras import DoubledAlgebra, M2Algebra, QuaternionAlgebra, ZornAlgebra
from ALGtools.rings import ModRing, PrimeField, Rationals


VALID_FILES = sorted(set(glob.glob('algebras/*.json')) - {'algebras/invalid_kind.json', 'algebras/invalid_lambda.json'})


@pytest.fixture(scope='module')
def schema():
    return ALGparser.load_schema()


def test_schema_is_valid():
    with open('ALGschema.json') as f:
        jsonschema.Draft202012Validator.check_schema(json.load(f))


def test_examples_validate(schema):
    with open('ALGexamples.json') as f:
        examples = json.load(f)
    for data in examples:
        schema.validate(data)
        ALGparser.AlgebraFile.from_json(data).to_spec()


@pytest.mark.parametrize('filename', VALID_FILES)
def test_algebra_files_load(schema, filename):
    algebra = ALGparser.load_algebra(filename, schema)
    assert algebra.to_spec() is not None


@pytest.mark.parametrize('data', [
    {'ring': 'F3', 'kind': 'sedenion'},
    {'kind': 'm2'},
    {'ring': 'F3', 'kind': 'quaternion', 'a': '1'},
    {'ring': 'F3', 'kind': 'quaternion', 'a': 'x', 'b': '1'},
    {'ring': 'R', 'kind': 'm2'},
    {'ring': 'F3', 'kind': 'm2', 'a': '1'},
    {'ring': 'Q', 'kind': 'doubled', 'base': {'kind': 'm2'}},
])
def test_schema_rejects(schema, data):
    with pytest.raises(jsonschema.exceptions.ValidationError):
        schema.validate(data)


def test_invalid_kind_file(schema):
    with pytest.raises(jsonschema.exceptions.ValidationError):
        ALGparser.load_algebra('algebras/invalid_kind.json', schema)


def test_missing_file(schema):
    with pytest.raises(FileNotFoundError):
        ALGparser.load_algebra('algebras/does_not_exist.json', schema)


class TestToSpec:
    @pytest.mark.parametrize('data, expected', [
        ({'ring': 'F2', 'kind': 'zorn'}, ZornAlgebra(PrimeField(2))),
        ({'ring': 'Z/9', 'kind': 'm2'}, M2Algebra(ModRing(9))),
        ({'ring': 'Z/9', 'kind': 'quaternion', 'a': '2', 'b': '5'},
         QuaternionAlgebra(ModRing(9), ModRing(9).elem(2), ModRing(9).elem(5))),
        ({'ring': 'Q', 'kind': 'doubled', 'base': {'kind': 'quaternion', 'a': '-1', 'b': '-1'}, 'lambda': '-1'},
         DoubledAlgebra(Rationals(), QuaternionAlgebra(Rationals(), Rationals().elem(-1), Rationals().elem(-1)),
                        Rationals().elem(-1))),
    ])
    def test_build(self, data, expected):
        assert ALGparser.AlgebraFile.from_json(data).to_spec() == expected

    @pytest.mark.parametrize('data, field', [
        ({'ring': 'F4', 'kind': 'm2'}, 'ring'),
        ({'ring': 'Z/9', 'kind': 'quaternion', 'a': '3', 'b': '1'}, 'a'),
        ({'ring': 'Z/9', 'kind': 'quaternion', 'a': '1', 'b': '1/3'}, 'b'),
        ({'ring': 'Z/9', 'kind': 'doubled', 'base': {'kind': 'm2'}, 'lambda': '3'}, 'lambda'),
        ({'ring': 'F3', 'kind': 'doubled', 'base': {'kind': 'zorn'}, 'lambda': '1'}, 'base'),
        ({'ring': 'F3', 'kind': 'doubled', 'base': {'ring': 'F5', 'kind': 'm2'}, 'lambda': '1'}, 'base'),
    ])
    def test_invalid_field(self, data, field):
        with pytest.raises(exceptions.InvalidAlgebra) as info:
            ALGparser.AlgebraFile.from_json(data).to_spec()
        assert info.value.field == field

    def test_invalid_lambda_file(self, schema):
        algebra = ALGparser.load_algebra('algebras/invalid_lambda.json', schema)
        with pytest.raises(exceptions.InvalidAlgebra) as info:
            algebra.to_spec()
        assert info.value.field == 'lambda'


@pytest.mark.parametrize('filename', VALID_FILES)
def test_round_trip(filename):
    with open(filename) as f:
        data = json.load(f)
    algebra = ALGparser.AlgebraFile.from_json(data)
    assert algebra.to_json() == data
    assert ALGparser.AlgebraFile.from_spec(algebra.to_spec()) == algebra
