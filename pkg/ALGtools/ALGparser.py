from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import jsonschema

from ALGtools import exceptions
from ALGtools.algebras import AlgebraSpec, DoubledAlgebra, M2Algebra, QuaternionAlgebra, ZornAlgebra
from ALGtools.config import SCHEMA_PATH
from ALGtools.rings import RingSpec, parse_ring
from ALGtools.visitor import SpecSerializer


def load_schema(filename: str = SCHEMA_PATH) -> jsonschema.Draft202012Validator:
    """
    Load an algebra description schema, checking the schema itself first.

    Raises
    ------
    FileNotFoundError
        If the schema file does not exist
    jsonschema.exceptions.SchemaError
        If the file is not a valid draft 2020-12 schema
    """
    with open(filename, encoding='utf-8') as schema_file:
        data = json.load(schema_file)
        jsonschema.Draft202012Validator.check_schema(data)

    return jsonschema.Draft202012Validator(data)


def load_validate_json(filename: str, schema: jsonschema.Draft202012Validator = None) -> dict:
    """
    Load and validate a JSON algebra description.

    Parameters
    ----------
    filename : str
        The name of the json file to load
    schema : schema validator, optional
        The validator to use; defaults to the package's ALGschema.json

    Returns
    -------
    dict
        The parsed description

    Raises
    ------
    FileNotFoundError
        If the specified filename does not exist
    json.JSONDecodeError
        If the file is not JSON
    jsonschema.exceptions.ValidationError
        If the parsed file is invalid under the given schema
    """
    schema = schema or load_schema()
    with open(filename, encoding='utf-8') as data_file:
        data = json.load(data_file)

    schema.validate(data)
    return data


@dataclass(frozen=True)
class AlgebraFile:
    """
    The parsed form of an algebra description. Numeric parameters stay
    decimal strings until `to_spec`; a base algebra carries no ring of its own.
    """
    kind: str
    ring: Optional[str] = None
    a: Optional[str] = None
    b: Optional[str] = None
    base: Optional[AlgebraFile] = None
    lam: Optional[str] = None

    @classmethod
    def from_json(cls, data: dict, schema: jsonschema.Draft202012Validator = None) -> AlgebraFile:
        """
        Raises
        ------
        jsonschema.exceptions.ValidationError
            If a schema is given and the data does not conform to it
        """
        if schema is not None:
            schema.validate(data)
        base = data.get('base')
        return cls(kind=data['kind'],
                   ring=data.get('ring'),
                   a=data.get('a'),
                   b=data.get('b'),
                   base=cls.from_json(base) if base is not None else None,
                   lam=data.get('lambda'))

    @classmethod
    def from_spec(cls, spec: AlgebraSpec) -> AlgebraFile:
        return cls.from_json(SpecSerializer().run(spec))

    def to_json(self) -> dict:
        result = {}
        if self.ring is not None:
            result['ring'] = self.ring
        result['kind'] = self.kind
        if self.kind == 'quaternion':
            result['a'] = self.a
            result['b'] = self.b
        if self.kind == 'doubled':
            result['base'] = self.base.to_json()
            result['lambda'] = self.lam
        return result

    def to_spec(self, ring: RingSpec = None) -> AlgebraSpec:
        """
        Build the algebra, checking everything the schema can't express.

        Raises
        ------
        InvalidAlgebra
            With the offending field: an unparsable ring, parameters that are
            not numbers or not units, or an unsupported base algebra
        """
        if ring is None:
            if self.ring is None:
                raise exceptions.InvalidAlgebra('ring', "missing ring")
            try:
                ring = parse_ring(self.ring)
            except exceptions.RingParseError as e:
                raise exceptions.InvalidAlgebra('ring', str(e)) from e
        elif self.ring is not None and self.ring != str(ring):
            raise exceptions.InvalidAlgebra('base', f"base ring {self.ring} differs from {ring}")

        if self.kind == 'm2':
            return M2Algebra(ring)
        if self.kind == 'zorn':
            return ZornAlgebra(ring)
        if self.kind == 'quaternion':
            return QuaternionAlgebra(ring, self._parameter(ring, 'a', self.a), self._parameter(ring, 'b', self.b))
        if self.kind == 'doubled':
            if self.base is None:
                raise exceptions.InvalidAlgebra('base', "doubled algebra without a base")
            base = self.base.to_spec(ring)
            return DoubledAlgebra(ring, base, self._parameter(ring, 'lambda', self.lam))
        raise exceptions.InvalidAlgebra('kind', f"unknown algebra kind {self.kind!r}")

    @staticmethod
    def _parameter(ring: RingSpec, name: str, text: Optional[str]):
        if text is None:
            raise exceptions.InvalidAlgebra(name, "missing parameter")
        try:
            return ring.parse_elem(text)
        except (exceptions.RingParseError, exceptions.NotAUnit) as e:
            raise exceptions.InvalidAlgebra(name, str(e)) from e


def load_algebra(filename: str, schema: jsonschema.Draft202012Validator = None) -> AlgebraFile:
    """
    Load, validate and parse an algebra description file
    """
    return AlgebraFile.from_json(load_validate_json(filename, schema))
