"""
Named verification claims and the commands that run them.

Each claim checks one identity or structural statement about an algebra,
exhaustively over small finite rings and on seeded random samples otherwise,
and yields a `Report`. A failing claim carries a witness; feeding the
witness's coordinate lists to the claim's `recheck` re-validates it as a
violation independently of the scan that found it.
"""
from __future__ import annotations

import itertools
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional, Union

from ALGtools import exceptions
from ALGtools.ALGparser import AlgebraFile
from ALGtools.algebras import (AlgElem, AlgebraSpec, DoubledAlgebra, M2Algebra, QuaternionAlgebra, ZornAlgebra,
                               alg_enumerate, alg_inv, alg_norm, algebra_size, doubled_zorn_iso, mul_raw,
                               random_element, zorn_doubled_iso)
from ALGtools.budget import WorkBudget
from ALGtools.config import AUTO_EXHAUSTIVE_LIMIT, RunOptions, thread_count
from ALGtools.grouppoints import (AUT, MU2, O, SL1, SO, PointSet, aut_enumerate, canonical_involution_map, dickson,
                                  f_image, f_kernel, f_map, is_algebra_automorphism, left_translation_s, mu2_elements,
                                  orbit_map_u, orthogonal_elements, phi_family, sl1_elements,
                                  special_orthogonal_elements, split_octonion_isomorphism)
from ALGtools.isomorphism import find_quaternion_isomorphism, has_zero_divisor
from ALGtools.linmap import LinMap
from ALGtools.mat2 import Mat2, sl2_elements
from ALGtools.quadforms import (QuadForm, find_isometry, form_from_algebra, is_isotropic,
                                is_nonsingular, preserves, representation_counts, substitute)
from ALGtools.registry import ClaimRegistry
from ALGtools.report import FAIL, PASS, SKIPPED, Report, encode_witness
from ALGtools.rings import RATIONALS, RingSpec, Rationals, iter_units


logger = logging.getLogger(__name__)

# Order of the automorphism group of the split octonions over F2
G2_F2_ORDER = 12096

RANDOM_SUBSTITUTIONS = 100

# Errors that turn a claim into a skipped verdict instead of aborting the run
SKIP_ERRORS = (exceptions.BudgetExceeded, exceptions.UnsupportedRing, exceptions.InfiniteRing, exceptions.CharTwo)

REGISTRY = ClaimRegistry('claims')

norm_form = lru_cache(maxsize=None)(form_from_algebra)


@dataclass
class Outcome:
    """
    Result of a claim check. `witness` holds module-level objects
    (algebra elements, matrices, maps) and is only set on failure.
    """
    passed: bool
    counts: dict = field(default_factory=dict)
    witness: Optional[list] = None
    details: dict = field(default_factory=dict)
    reason: Optional[str] = None


class Context:
    """
    Per-claim run state: options, a private work budget and a seeded random
    generator, so that every claim is deterministic on its own.
    """
    def __init__(self, options: RunOptions) -> None:
        self.options = options
        self.budget = WorkBudget(options.budget)
        self.rng = random.Random(options.seed)

    @staticmethod
    def scan_size(spec: AlgebraSpec, arity: int, linear: tuple[int, ...] = ()) -> int:
        return algebra_size(spec) ** (arity - len(linear)) * spec.rank ** len(linear)

    def exhaustive(self, spec: AlgebraSpec, arity: int, linear: tuple[int, ...] = ()) -> bool:
        mode = self.options.mode
        if mode == 'samples':
            return False
        if mode == 'exhaustive':
            spec.ring.require_finite()
            return True
        return spec.ring.is_finite and self.scan_size(spec, arity, linear) <= AUTO_EXHAUSTIVE_LIMIT

    def tuples(self, spec: AlgebraSpec, arity: int, linear: tuple[int, ...] = ()) -> Iterator[tuple[AlgElem, ...]]:
        """
        Every arity-tuple of elements, or `samples` seeded random tuples.

        Positions listed in `linear` are arguments the checked identity is
        linear in; an exhaustive scan runs them over the basis only, which
        covers every tuple of elements by linearity.
        """
        if self.exhaustive(spec, arity, linear):
            self.budget.spend(self.scan_size(spec, arity, linear))
            elements, basis = alg_enumerate(spec), spec.basis()
            return itertools.product(*(basis if i in linear else elements for i in range(arity)))
        self.budget.spend(self.options.samples)
        samples = [tuple(random_element(spec, self.rng) for _ in range(arity)) for _ in range(self.options.samples)]
        return iter(samples)

    def scale(self, spec: AlgebraSpec, arity: int, linear: tuple[int, ...] = ()) -> str:
        return 'exhaustive' if self.exhaustive(spec, arity, linear) else 'samples'


def _any_kind(spec: AlgebraSpec) -> Optional[str]:
    return None


def _associative_kind(spec: AlgebraSpec) -> Optional[str]:
    if not spec.associative:
        return f"{spec.kind} is not associative"
    return None


def _doubled_kind(spec: AlgebraSpec) -> Optional[str]:
    if not isinstance(spec, DoubledAlgebra):
        return f"{spec.kind} is not a doubled algebra"
    return None


def _split_octonion_kind(spec: AlgebraSpec) -> Optional[str]:
    if isinstance(spec, ZornAlgebra) or spec == DoubledAlgebra.split(spec.ring):
        return None
    return f"{spec} is neither Zorn nor Doubled(M2, 1)"


class Claim:
    """
    A named, individually runnable verification.

    Parameters
    ----------
    id : str
        Stable claim id, e.g. 'norm-mult'
    description : str
        One-line statement of what is verified
    check : callable
        (spec, Context) -> Outcome
    requires : callable
        spec -> reason string when the claim does not apply to the algebra
    slow : bool
        Excluded from 'all' unless slow claims are requested
    """
    def __init__(self, id: str, description: str, check: Callable[[AlgebraSpec, Context], Outcome],
                 requires: Callable[[AlgebraSpec], Optional[str]] = _any_kind, slow: bool = False) -> None:
        self.id = id
        self.description = description
        self.check = check
        self.requires = requires
        self.slow = slow
        self._recheck = None

    def rechecker(self, func: Callable[[AlgebraSpec, list], bool]) -> Callable[[AlgebraSpec, list], bool]:
        self._recheck = func
        return func

    def recheck(self, spec: AlgebraSpec, witness: list) -> bool:
        """
        True when the encoded witness is confirmed as a violation
        """
        return bool(self._recheck(spec, witness))

    def __repr__(self) -> str:
        return f"Claim({self.id!r})"


def claim(claim_id: str, description: str, requires=_any_kind, slow=False) -> Callable[..., Claim]:
    def register(check):
        return REGISTRY.add(Claim(claim_id, description, check, requires, slow))
    return register


# Witness decoding

def _elements(spec: AlgebraSpec, witness: list) -> list[AlgElem]:
    parse = spec.ring.parse_elem
    return [spec.element([parse(c) for c in coords]) for coords in witness]


def _matrices(ring: RingSpec, witness: list) -> list[Mat2]:
    return [Mat2.from_coords([ring.parse_elem(c) for c in coords]) for coords in witness]


def _linmap(ring: RingSpec, rows: list) -> LinMap:
    return LinMap(ring, tuple(tuple(ring.parse_elem(c).value for c in row) for row in rows))


# Identity claims: a predicate on raw coordinate vectors, scanned over tuples

def identity_claim(claim_id: str, description: str, arity: int, label: str,
                   fails: Callable[..., bool], linear: tuple[int, ...] = (), requires=_any_kind) -> Claim:
    def check(spec: AlgebraSpec, ctx: Context) -> Outcome:
        scanned = 0
        for items in ctx.tuples(spec, arity, linear):
            scanned += 1
            if fails(spec, *(x.values for x in items)):
                return Outcome(False, {label: scanned}, list(items), reason=description)
        return Outcome(True, {label: scanned}, details={'scale': ctx.scale(spec, arity, linear)})

    registered = claim(claim_id, description, requires)(check)

    @registered.rechecker
    def recheck(spec: AlgebraSpec, witness: list) -> bool:
        return fails(spec, *(x.values for x in _elements(spec, witness)))

    return registered


def _sub(spec: AlgebraSpec, x, y) -> tuple:
    return tuple(spec.ring.reduce(a - b) for a, b in zip(x, y))


def _conj_raw(spec: AlgebraSpec, x) -> tuple:
    trace = spec.trace_raw(x)
    return _sub(spec, tuple(trace * c for c in spec.one_raw()), x)


def _norm_mult_fails(spec: AlgebraSpec, x, y) -> bool:
    return spec.norm_raw(mul_raw(spec, x, y)) != spec.ring.reduce(spec.norm_raw(x) * spec.norm_raw(y))


def _composition_fails(spec: AlgebraSpec, x, y) -> bool:
    ring = spec.ring
    norm, trace = spec.norm_raw(x), spec.trace_raw(x)
    conj = _conj_raw(spec, x)
    norm_one = tuple(ring.reduce(norm * c) for c in spec.one_raw())
    # x conj(x) = n(x) 1 and x^2 - t(x) x + n(x) 1 = 0
    if mul_raw(spec, x, conj) != norm_one:
        return True
    square = mul_raw(spec, x, x)
    if tuple(ring.reduce(s - trace * c + n) for s, c, n in zip(square, x, norm_one)) != spec.zero.values:
        return True
    # conj(conj(x)) = x and conj(xy) = conj(y) conj(x)
    if _conj_raw(spec, conj) != x:
        return True
    if _conj_raw(spec, mul_raw(spec, x, y)) != mul_raw(spec, _conj_raw(spec, y), conj):
        return True
    return norm_form(spec).evaluate_raw(x) != norm


def _alternative_fails(spec: AlgebraSpec, x, y) -> bool:
    def mul(u, v):
        return mul_raw(spec, u, v)
    xx = mul(x, x)
    return (mul(xx, y) != mul(x, mul(x, y))
            or mul(mul(y, x), x) != mul(y, xx)
            or mul(mul(x, y), x) != mul(x, mul(y, x)))


def _moufang_fails(spec: AlgebraSpec, x, y, z) -> bool:
    def mul(u, v):
        return mul_raw(spec, u, v)
    return (mul(z, mul(x, mul(z, y))) != mul(mul(mul(z, x), z), y)
            or mul(x, mul(z, mul(y, z))) != mul(mul(mul(x, z), y), z)
            or mul(mul(z, x), mul(y, z)) != mul(mul(z, mul(x, y)), z))


identity_claim('norm-mult', "n(xy) = n(x) n(y)", 2, 'pairs', _norm_mult_fails)
identity_claim('composition', "x conj(x) = n(x) 1, x^2 - t(x) x + n(x) = 0, conj(conj(x)) = x, "
                              "conj(xy) = conj(y) conj(x) and the norm form evaluates to n",
               2, 'pairs', _composition_fails, linear=(1,))
identity_claim('alternative', "(xx)y = x(xy), (yx)x = y(xx), (xy)x = x(yx)", 2, 'pairs', _alternative_fails,
               linear=(1,))
identity_claim('moufang', "the three Moufang identities", 3, 'triples', _moufang_fails, linear=(0, 1))


def _associator_nonzero(spec: AlgebraSpec, x, y, z) -> bool:
    return mul_raw(spec, mul_raw(spec, x, y), z) != mul_raw(spec, x, mul_raw(spec, y, z))


@claim('associativity', "associative kinds associate on all basis triples; octonion kinds have a failing triple")
def associativity(spec: AlgebraSpec, ctx: Context) -> Outcome:
    basis = spec.basis()
    scanned = 0
    for x, y, z in itertools.product(basis, repeat=3):
        scanned += 1
        if _associator_nonzero(spec, x.values, y.values, z.values):
            if spec.associative:
                return Outcome(False, {'triples': scanned}, [x, y, z], reason="non-zero associator")
            return Outcome(True, {'triples': scanned},
                           details={'associator_witness': [encode_witness(e) for e in (x, y, z)]})
    if spec.associative:
        return Outcome(True, {'triples': scanned})
    # the whole basis is the witness: no triple drawn from it has a non-zero associator
    return Outcome(False, {'triples': scanned}, list(basis), reason="no basis triple with a non-zero associator")


@associativity.rechecker
def associativity_violated(spec: AlgebraSpec, witness: list) -> bool:
    elements = [x.values for x in _elements(spec, witness)]
    if spec.associative:
        return len(elements) == 3 and _associator_nonzero(spec, *elements)
    basis = [e.values for e in spec.basis()]
    return elements == basis and not any(_associator_nonzero(spec, *t) for t in itertools.product(basis, repeat=3))


@claim('nonsingular', "the polar matrix of the norm form has unit determinant")
def nonsingular(spec: AlgebraSpec, ctx: Context) -> Outcome:
    det = norm_form(spec).polar_matrix().det()
    details = {'polar_det': str(det)}
    if det.is_unit:
        return Outcome(True, {'rank': spec.rank}, details=details)
    return Outcome(False, {'rank': spec.rank}, [det], details, reason="polar determinant is not a unit")


@nonsingular.rechecker
def nonsingular_violated(spec: AlgebraSpec, witness: list) -> bool:
    return not is_nonsingular(norm_form(spec))


def doubled_block_form(spec: DoubledAlgebra) -> QuadForm:
    """
    The block form n_B(x) - lambda n_B(y) on base + base
    """
    base = norm_form(spec.base)
    r = spec.base.rank
    coefficients = {}
    for i in range(r):
        for j in range(i, r):
            c = base.coeffs[i][j]
            coefficients[i, j] = c
            coefficients[i + r, j + r] = -spec.lam.value * c
    return QuadForm.from_coefficients(spec.ring, spec.rank, coefficients)


def _differing_vector(actual: QuadForm, expected: QuadForm) -> Optional[tuple]:
    """
    A vector on which two forms of the same rank disagree, or None when
    they are equal coefficient-wise: e_i for a differing square
    coefficient, else e_i + e_j for a differing cross coefficient.
    """
    n = actual.rank
    for i in range(n):
        if actual.coeffs[i][i] != expected.coeffs[i][i]:
            return tuple(int(k == i) for k in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if actual.coeffs[i][j] != expected.coeffs[i][j]:
                return tuple(int(k in (i, j)) for k in range(n))
    return None


@claim('doubling-norm', "the norm form of a doubled algebra is the block form n(x) - lambda n(y), non-singular",
       requires=_doubled_kind)
def doubling_norm(spec: DoubledAlgebra, ctx: Context) -> Outcome:
    actual, expected = norm_form(spec), doubled_block_form(spec)
    details = {'nonsingular': is_nonsingular(actual)}
    counts = {'coefficients': spec.rank * (spec.rank + 1) // 2}
    v = _differing_vector(actual, expected)
    if v is not None:
        return Outcome(False, counts, list(spec.halves(spec.element(v))), details,
                       reason="n((x, y)) differs from n(x) - lambda n(y)")
    if not details['nonsingular']:
        return Outcome(False, counts, [actual.polar_matrix().det()], details, reason="singular norm form")
    return Outcome(True, counts, details=details)


@doubling_norm.rechecker
def doubling_norm_violated(spec: DoubledAlgebra, witness: list) -> bool:
    actual = norm_form(spec)
    if len(witness) == 1:
        det = spec.ring.parse_elem(witness[0][0])
        return det == actual.polar_matrix().det() and not det.is_unit
    x, y = _elements(spec.base, witness)
    v = spec.pair(x, y).values
    return actual.evaluate_raw(v) != doubled_block_form(spec).evaluate_raw(v)


# Group statements on associative kinds

def _is_mu2_diagonal(spec: AlgebraSpec, x: AlgElem, y: AlgElem) -> bool:
    if x != y:
        return False
    scalars = {spec.scalar(t) for t in mu2_elements(spec.ring)}
    return x in scalars


@claim('lemma-ker-f', "the kernel of f: SL1 x SL1 -> SO is the diagonal image of mu2", requires=_associative_kind)
def lemma_ker_f(spec: AlgebraSpec, ctx: Context) -> Outcome:
    sl1 = sl1_elements(spec)
    ctx.budget.spend(len(sl1) ** 2)
    kernel = f_kernel(spec)
    mu2 = mu2_elements(spec.ring)
    expected = tuple((spec.scalar(t), spec.scalar(t)) for t in mu2)
    counts = {'sl1': len(sl1), 'pairs': len(sl1) ** 2, 'kernel': len(kernel), 'mu2': len(mu2)}
    extra = [pair for pair in kernel if pair not in expected]
    missing = [pair for pair in expected if pair not in kernel]
    if extra or missing:
        return Outcome(False, counts, list((extra or missing)[0]), reason="kernel differs from mu2")
    return Outcome(True, counts)


@lemma_ker_f.rechecker
def lemma_ker_f_violated(spec: AlgebraSpec, witness: list) -> bool:
    x, y = _elements(spec, witness)
    return f_map(x, y).is_identity != _is_mu2_diagonal(spec, x, y)


def in_special_orthogonal(form: QuadForm, g: LinMap) -> bool:
    """
    g preserves the form and has Dickson invariant 0 (det 1 where the
    invariant is undefined)
    """
    if not preserves(form, g):
        return False
    try:
        return dickson(g, form) == 0
    except exceptions.UnsupportedRing:
        return g.det() == form.ring.one


@claim('lemma-image-so', "every f(x, y) preserves the norm form and lies in SO", requires=_associative_kind)
def lemma_image_so(spec: AlgebraSpec, ctx: Context) -> Outcome:
    form = norm_form(spec)
    sl1 = sl1_elements(spec)
    ctx.budget.spend(len(sl1) ** 2)
    for x in sl1:
        for y in sl1:
            if not in_special_orthogonal(form, f_map(x, y)):
                return Outcome(False, {'pairs': len(sl1) ** 2}, [x, y], reason="f(x, y) is not in SO")
    return Outcome(True, {'pairs': len(sl1) ** 2})


@lemma_image_so.rechecker
def lemma_image_so_violated(spec: AlgebraSpec, witness: list) -> bool:
    x, y = _elements(spec, witness)
    return not in_special_orthogonal(norm_form(spec), f_map(x, y))


def _section_fails(spec: AlgebraSpec, q: AlgElem) -> bool:
    s = left_translation_s(q)
    return orbit_map_u(s, spec) != q or s.det() != spec.ring.one or not preserves(norm_form(spec), s)


@claim('prop-max-section', "u(s(q)) = q, det s(q) = 1 and s(q) preserves the norm for q in SL1",
       requires=_associative_kind)
def prop_max_section(spec: AlgebraSpec, ctx: Context) -> Outcome:
    sl1 = sl1_elements(spec)
    ctx.budget.spend(len(sl1))
    for q in sl1:
        if _section_fails(spec, q):
            return Outcome(False, {'sl1': len(sl1)}, [q], reason="left translation is not a section")
    return Outcome(True, {'sl1': len(sl1)})


@prop_max_section.rechecker
def prop_max_section_violated(spec: AlgebraSpec, witness: list) -> bool:
    return _section_fails(spec, *_elements(spec, witness))


def _orbit_fails(spec: AlgebraSpec, x: AlgElem, y: AlgElem) -> bool:
    return orbit_map_u(f_map(x, y), spec) != x * alg_inv(y)


@claim('prop-max-orbit', "u(f(x, y)) = x y^-1 for all norm-one pairs", requires=_associative_kind)
def prop_max_orbit(spec: AlgebraSpec, ctx: Context) -> Outcome:
    sl1 = sl1_elements(spec)
    ctx.budget.spend(len(sl1) ** 2)
    for x in sl1:
        for y in sl1:
            if _orbit_fails(spec, x, y):
                return Outcome(False, {'pairs': len(sl1) ** 2}, [x, y], reason="orbit formula fails")
    return Outcome(True, {'pairs': len(sl1) ** 2})


@prop_max_orbit.rechecker
def prop_max_orbit_violated(spec: AlgebraSpec, witness: list) -> bool:
    return _orbit_fails(spec, *_elements(spec, witness))


def _involution_fails(spec: AlgebraSpec, sigma: LinMap) -> bool:
    form = norm_form(spec)
    return not (sigma @ sigma).is_identity or not preserves(form, sigma) or dickson(sigma, form) != 1


@claim('lemma-dickson', "the canonical involution is an involutive isometry with Dickson invariant 1, "
                        "and O = SO + sigma SO where O is enumerable")
def lemma_dickson(spec: AlgebraSpec, ctx: Context) -> Outcome:
    form = norm_form(spec)
    sigma = canonical_involution_map(spec)
    details = {'det': str(sigma.det())}
    if _involution_fails(spec, sigma):
        return Outcome(False, {}, [sigma], details, reason="canonical involution fails")
    details['dickson'] = 1

    if not spec.ring.is_finite or spec.rank > 4:
        details['decomposition'] = 'not enumerated'
        return Outcome(True, {}, details=details)

    try:
        orthogonal = orthogonal_elements(form, ctx.budget)
    except exceptions.BudgetExceeded as e:
        details['decomposition'] = f"not enumerated: {e}"
        return Outcome(True, {}, details=details)
    special = special_orthogonal_elements(form, orthogonal=orthogonal)
    coset = {sigma @ g for g in special}
    counts = {'O': len(orthogonal), 'SO': len(special)}
    for g in orthogonal:
        if g not in special and g not in coset:
            return Outcome(False, counts, [g], details, reason="element outside SO and sigma SO")
    if coset & special.members or 2 * len(special) != len(orthogonal):
        return Outcome(False, counts, [sigma], details, reason="SO and sigma SO overlap")
    details['decomposition'] = 'verified'
    return Outcome(True, counts, details=details)


@lemma_dickson.rechecker
def lemma_dickson_violated(spec: AlgebraSpec, witness: list) -> bool:
    form = norm_form(spec)
    sigma = canonical_involution_map(spec)
    g = _linmap(spec.ring, witness[0])
    if g == sigma:
        return _involution_fails(spec, sigma)
    return dickson(g, form) == 1 and dickson(sigma @ g, form) != 0


def _sizes_inconsistent(image: int, kernel: int, sl1: int, special: int) -> bool:
    return image * kernel != sl1 ** 2 or special % image != 0


@claim('f-index', "the image of f lies in SO with |SL1|^2 / |ker f| elements; reports the index",
       requires=_associative_kind)
def f_index(spec: AlgebraSpec, ctx: Context) -> Outcome:
    form = norm_form(spec)
    sl1 = sl1_elements(spec)
    ctx.budget.spend(2 * len(sl1) ** 2)
    image = f_image(spec)
    kernel = f_kernel(spec)
    special = special_orthogonal_elements(form, ctx.budget)
    counts = {'image': len(image), 'kernel': len(kernel), 'SO': len(special)}
    for g in image:
        if g not in special:
            return Outcome(False, counts, [g], reason="f(x, y) outside the enumerated SO")
    sizes = (len(image), len(kernel), len(sl1), len(special))
    if _sizes_inconsistent(*sizes):
        return Outcome(False, counts, [sizes], reason="image size inconsistent with |SL1|^2 / |ker f| or |SO|")
    counts['index'] = len(special) // len(image)
    return Outcome(True, counts)


@f_index.rechecker
def f_index_violated(spec: AlgebraSpec, witness: list) -> bool:
    first = witness[0]
    if isinstance(first[0], list):
        return not in_special_orthogonal(norm_form(spec), _linmap(spec.ring, first))
    sizes = (len(f_image(spec)), len(f_kernel(spec)), len(sl1_elements(spec)),
             len(special_orthogonal_elements(norm_form(spec))))
    return [str(s) for s in sizes] == first and _sizes_inconsistent(*sizes)


# Octonion statements

def _iso_fails(x: AlgElem, y: Optional[AlgElem] = None) -> bool:
    fx = zorn_doubled_iso(x)
    if y is None:
        return alg_norm(fx) != alg_norm(x) or doubled_zorn_iso(fx) != x
    return zorn_doubled_iso(x * y) != fx * zorn_doubled_iso(y)


@claim('zorn-doubled-iso', "the fixed map Zorn -> Doubled(M2, 1) is unital, multiplicative and norm-preserving",
       requires=_split_octonion_kind)
def zorn_doubled(spec: AlgebraSpec, ctx: Context) -> Outcome:
    zorn = ZornAlgebra(spec.ring)
    if zorn_doubled_iso(zorn.one) != DoubledAlgebra.split(spec.ring).one:
        return Outcome(False, {}, [zorn.one], reason="not unital")
    counts = {'pairs': 0, 'elements': 0}
    for x, y in ctx.tuples(zorn, 2):
        counts['pairs'] += 1
        if _iso_fails(x, y):
            return Outcome(False, counts, [x, y], reason="not multiplicative")
    for (x,) in ctx.tuples(zorn, 1):
        counts['elements'] += 1
        if _iso_fails(x):
            return Outcome(False, counts, [x], reason="not norm-preserving or not inverted")
    return Outcome(True, counts, details={'scale': ctx.scale(zorn, 2)})


@zorn_doubled.rechecker
def zorn_doubled_violated(spec: AlgebraSpec, witness: list) -> bool:
    zorn = ZornAlgebra(spec.ring)
    elements = _elements(zorn, witness)
    if elements == [zorn.one] and zorn_doubled_iso(zorn.one) != DoubledAlgebra.split(spec.ring).one:
        return True
    return _iso_fails(*elements)


def random_sl2(ring: RingSpec, rng: random.Random) -> Mat2:
    """
    A random [[p, q], [r, (1 + qr) / p]] with p a unit
    """
    p = ring.random_raw(rng)
    while not ring.is_unit_raw(ring.reduce(p)):
        p = ring.random_raw(rng)
    q, r = ring.random_raw(rng), ring.random_raw(rng)
    return Mat2.from_rows(ring, [[p, q], [r, ring.reduce((1 + q * r) * ring.inv_raw(ring.reduce(p)))]])


def _phi_fails(a: Mat2, b: Mat2, *elements: AlgElem) -> bool:
    T = phi_family(a, b)
    doubled = DoubledAlgebra.split(a.ring)
    if not elements:
        return not is_algebra_automorphism(doubled, T) or not preserves(norm_form(doubled), T)
    x, *rest = elements
    if not rest:
        return alg_norm(T.apply(x)) != alg_norm(x)
    y = rest[0]
    return T.apply(x * y) != T.apply(x) * T.apply(y)


def _same_class(ring: RingSpec, a: Mat2, b: Mat2, c: Mat2, d: Mat2) -> bool:
    """
    True when (c, d) = (t a, t b) for some t in mu2
    """
    return any(Mat2.scalar(t) * a == c and Mat2.scalar(t) * b == d for t in mu2_elements(ring))


@claim('phi-family', "(X, Y) -> (a X a^-1, a Y b^-1) are norm-preserving automorphisms, injective modulo +-(I, I)",
       requires=_split_octonion_kind)
def phi_family_claim(spec: AlgebraSpec, ctx: Context) -> Outcome:
    ring = spec.ring
    doubled = DoubledAlgebra.split(ring)
    if ring.is_finite and ctx.options.mode != 'samples':
        sl2 = sl2_elements(ring)
        mu2 = [Mat2.scalar(t) for t in mu2_elements(ring)]
        ctx.budget.spend(len(sl2) ** 2)
        maps = {}
        for a in sl2:
            for b in sl2:
                if _phi_fails(a, b):
                    return Outcome(False, {'pairs': len(maps)}, [a, b], reason="not a norm-preserving automorphism")
                first = maps.setdefault(phi_family(a, b), (a, b))
                if first != (a, b) and not _same_class(ring, *first, a, b):
                    return Outcome(False, {'pairs': len(maps)}, [*first, a, b],
                                   reason="pairs outside one mu2 class give the same map")
        expected = len(sl2) ** 2 // len(mu2)
        counts = {'pairs': len(sl2) ** 2, 'distinct': len(maps), 'expected': expected}
        if len(maps) != expected:
            # with no collision across classes, some class must split
            a, b, t = next((a, b, t) for a in sl2 for b in sl2 for t in mu2
                           if phi_family(a, b) != phi_family(t * a, t * b))
            return Outcome(False, counts, [a, b, t * a, t * b], reason="pairs in one mu2 class give different maps")
        return Outcome(True, counts)

    samples = ctx.options.samples
    ctx.budget.spend(samples)
    for _ in range(samples):
        a, b = random_sl2(ring, ctx.rng), random_sl2(ring, ctx.rng)
        x, y = random_element(doubled, ctx.rng), random_element(doubled, ctx.rng)
        if _phi_fails(a, b, x):
            return Outcome(False, {'samples': samples}, [a, b, x], reason="norm not preserved")
        if _phi_fails(a, b, x, y):
            return Outcome(False, {'samples': samples}, [a, b, x, y], reason="not multiplicative")
    return Outcome(True, {'samples': samples})


@phi_family_claim.rechecker
def phi_family_violated(spec: AlgebraSpec, witness: list) -> bool:
    ring = spec.ring
    a, b = _matrices(ring, witness[:2])
    if len(witness) == 4 and len(witness[2]) == 4:
        c, d = _matrices(ring, witness[2:])
        return (phi_family(a, b) == phi_family(c, d)) != _same_class(ring, a, b, c, d)
    return _phi_fails(a, b, *_elements(DoubledAlgebra.split(ring), witness[2:]))


def random_invertible(ring: RingSpec, n: int, rng: random.Random) -> LinMap:
    while True:
        T = LinMap.from_rows(ring, [[ring.random_raw(rng) for _ in range(n)] for _ in range(n)])
        if T.is_invertible:
            return T


def _count_difference(old: dict, new: dict) -> Optional[tuple]:
    """
    First value (c, old count, new count) at which two representation counts differ
    """
    for c in sorted(old.keys() | new.keys(), key=lambda v: v.value):
        if old.get(c, 0) != new.get(c, 0):
            return c, old.get(c, 0), new.get(c, 0)
    return None


@claim('rep-counts', "representation counts of the norm form total |R|^rank and are invariant under substitution")
def rep_counts(spec: AlgebraSpec, ctx: Context) -> Outcome:
    form = norm_form(spec)
    counts = representation_counts(form, ctx.budget)
    total, expected = sum(counts.values()), spec.ring.order ** spec.rank
    details = {'counts': {str(value): count for value, count in counts.items()}}
    if total != expected:
        return Outcome(False, {'vectors': total}, [(total, expected)], details,
                       reason="counts do not add up to |R|^rank")
    for _ in range(RANDOM_SUBSTITUTIONS):
        T = random_invertible(spec.ring, spec.rank, ctx.rng)
        difference = _count_difference(counts, representation_counts(substitute(form, T), ctx.budget))
        if difference:
            return Outcome(False, {'vectors': total}, [T, difference], details,
                           reason="counts change under substitution")
    return Outcome(True, {'vectors': total, 'substitutions': RANDOM_SUBSTITUTIONS}, details=details)


@rep_counts.rechecker
def rep_counts_violated(spec: AlgebraSpec, witness: list) -> bool:
    form = norm_form(spec)
    first = witness[0]
    if not isinstance(first[0], list):
        total = sum(representation_counts(form).values())
        return str(total) == first[0] and total != spec.ring.order ** spec.rank
    T = _linmap(spec.ring, first)
    c, before, after = witness[1]
    c = spec.ring.parse_elem(c)
    old, new = representation_counts(form), representation_counts(substitute(form, T))
    return (str(old.get(c, 0)), str(new.get(c, 0))) == (before, after) and before != after


def _automorphism_fails(spec: AlgebraSpec, T: LinMap) -> bool:
    return not is_algebra_automorphism(spec, T) or not preserves(norm_form(spec), T)


def phi_images(spec: AlgebraSpec) -> list[LinMap]:
    """
    The phi-family over the algebra's ring, transported to Zorn when needed
    """
    ring = spec.ring
    sl2 = sl2_elements(ring)
    maps = [phi_family(a, b) for a in sl2 for b in sl2]
    if isinstance(spec, ZornAlgebra):
        to_doubled, to_zorn = split_octonion_isomorphism(ring)
        maps = [to_zorn @ T @ to_doubled for T in maps]
    return maps


@claim('aut-g2', "Aut of the split octonions over F2 has 12096 norm-preserving elements, containing the phi-family",
       requires=_split_octonion_kind, slow=True)
def aut_g2(spec: AlgebraSpec, ctx: Context) -> Outcome:
    automorphisms = aut_enumerate(spec, ctx.budget)
    counts = {'order': len(automorphisms), 'expected': G2_F2_ORDER}
    for T in automorphisms:
        if _automorphism_fails(spec, T):
            return Outcome(False, counts, [T], reason="enumerated map is not a norm-preserving automorphism")
    for T in phi_images(spec):
        if T not in automorphisms:
            return Outcome(False, counts, [T], reason="phi-family element missing from the enumeration")
    if len(automorphisms) != G2_F2_ORDER:
        return Outcome(False, counts, [(len(automorphisms), G2_F2_ORDER)], reason="unexpected group order")
    return Outcome(True, counts)


@aut_g2.rechecker
def aut_g2_violated(spec: AlgebraSpec, witness: list) -> bool:
    first = witness[0]
    if not isinstance(first[0], list):
        order = len(aut_enumerate(spec))
        return str(order) == first[0] and order != G2_F2_ORDER
    T = _linmap(spec.ring, first)
    if T in phi_images(spec):
        return T not in aut_enumerate(spec)
    return _automorphism_fails(spec, T)


# Commands

def run_claim(claim: Claim, spec: AlgebraSpec, options: RunOptions, strict_kind: bool = False) -> Report:
    """
    Run one claim into a report. Budget exhaustion and unsupported or
    infinite rings give a skipped verdict.

    Raises
    ------
    InvalidAlgebra
        When the claim does not apply to the algebra and strict_kind is set
    """
    started = time.perf_counter()
    report = Report(claim.id, str(spec.ring), str(spec), SKIPPED)
    reason = claim.requires(spec)
    if reason is not None:
        if strict_kind:
            raise exceptions.InvalidAlgebra('kind', f"claim {claim.id} does not apply: {reason}")
        report.reason = reason
    else:
        logger.info("checking %s on %s", claim.id, spec)
        ctx = Context(options)
        try:
            outcome = claim.check(spec, ctx)
        except SKIP_ERRORS as e:
            report.reason = f"{type(e).__name__}: {e}"
        else:
            report.verdict = PASS if outcome.passed else FAIL
            report.counts = outcome.counts
            report.details = outcome.details
            if not outcome.passed:
                report.reason = outcome.reason
                report.witness = [encode_witness(w) for w in outcome.witness or []]
                report.details['rechecked'] = claim.recheck(spec, report.witness)
        report.counts['work'] = ctx.budget.spent
    report.stamp(time.perf_counter() - started)
    logger.info("%s on %s: %s", claim.id, spec, report.verdict)
    return report


def _as_spec(algebra: Union[AlgebraFile, AlgebraSpec]) -> AlgebraSpec:
    return algebra.to_spec() if isinstance(algebra, AlgebraFile) else algebra


def cmd_verify(claim_id: str, algebra: Union[AlgebraFile, AlgebraSpec], options: RunOptions = None) -> list[Report]:
    """
    Run one claim, or every claim for 'all', on an algebra.

    Claims run concurrently on up to `options.threads` (or CAYLEY_THREADS)
    threads; reports come back in registry order regardless.

    Raises
    ------
    UnknownClaim
        For an unregistered claim id
    InvalidAlgebra
        For an invalid description, or a single claim that doesn't apply
    """
    options = options or RunOptions()
    spec = _as_spec(algebra)
    claims = REGISTRY.selected(claim_id, options.include_slow)
    strict_kind = claim_id != 'all'
    threads = options.threads or thread_count()

    def run(c: Claim) -> Report:
        return run_claim(c, spec, options, strict_kind)

    if threads > 1 and len(claims) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, claims))
    return [run(c) for c in claims]


def _partition(algebras: list[QuaternionAlgebra], equivalent: Callable[[QuaternionAlgebra, QuaternionAlgebra], bool]) -> list[int]:
    """
    Class index of each algebra, classes numbered by first occurrence
    """
    representatives: list[QuaternionAlgebra] = []
    labels = []
    for algebra in algebras:
        for index, representative in enumerate(representatives):
            if equivalent(algebra, representative):
                labels.append(index)
                break
        else:
            labels.append(len(representatives))
            representatives.append(algebra)
    return labels


def _classes(algebras: list[QuaternionAlgebra], labels: list[int]) -> list[list[str]]:
    classes = [[] for _ in range(max(labels) + 1)]
    for algebra, label in zip(algebras, labels):
        classes[label].append(f'({algebra.a},{algebra.b})')
    return classes


def _norm_theorem_rationals(options: RunOptions) -> Report:
    started = time.perf_counter()
    ring = Rationals()
    hamilton = QuaternionAlgebra(ring, ring.elem(-1), ring.elem(-1))
    split = M2Algebra(ring)
    hamilton_norm, split_norm = is_isotropic(norm_form(hamilton)), is_isotropic(norm_form(split))
    hamilton_divisor, split_divisor = has_zero_divisor(hamilton), has_zero_divisor(split)

    norms_separated = hamilton_norm.anisotropic and split_norm.isotropic
    algebras_separated = hamilton_divisor is None and split_divisor is not None
    details = {'mode': 'witness',
               'norms': {str(hamilton): hamilton_norm.status, str(split): split_norm.status},
               'isotropic_vector': [str(c) for c in split_norm.witness] if split_norm.witness else None,
               'zero_divisor': [encode_witness(x) for x in split_divisor] if split_divisor else None}
    report = Report('thm-isometric', str(ring), f'{hamilton} vs {split}',
                    PASS if norms_separated and algebras_separated else FAIL, counts={'algebras': 2},
                    details=details)
    if not report.passed:
        report.reason = "Hamilton quaternions and M2 are not separated on both sides"
        report.witness = [encode_witness(hamilton.one), encode_witness(split.one)]
    report.stamp(time.perf_counter() - started)
    return report


def cmd_norm_theorem(ring: RingSpec, options: RunOptions = None) -> Report:
    """
    Compare the partition of all quaternion algebras (a, b) over a finite
    ring by algebra isomorphism with their partition by isometry of norm
    forms; over Q, separate the Hamilton quaternions from M2 on both sides.

    Raises
    ------
    InfiniteRing
        Over Z
    CharTwo
        When 2 is not a unit
    """
    options = options or RunOptions()
    if ring.variant == RATIONALS:
        return _norm_theorem_rationals(options)
    ring.require_finite()
    if not ring.two_is_unit:
        raise exceptions.CharTwo(f"2 is not a unit in {ring}")

    started = time.perf_counter()
    units = list(iter_units(ring))
    algebras = [QuaternionAlgebra(ring, a, b) for a in units for b in units]
    report = Report('thm-isometric', str(ring), 'quaternion(a,b)', SKIPPED)
    budget = WorkBudget(options.budget)
    try:
        by_isomorphism = _partition(algebras, lambda x, y: find_quaternion_isomorphism(x, y, budget) is not None)
        by_isometry = _partition(algebras, lambda x, y: find_isometry(norm_form(x), norm_form(y), budget) is not None)
    except exceptions.BudgetExceeded as e:
        report.reason = f"BudgetExceeded: {e}"
        report.stamp(time.perf_counter() - started)
        return report

    # representation counts are an isometry invariant
    counts = {}
    consistent = True
    for algebra, label in zip(algebras, by_isometry):
        values = representation_counts(norm_form(algebra))
        consistent = consistent and counts.setdefault(label, values) == values
    split = [find_quaternion_isomorphism(algebras[by_isomorphism.index(label)], M2Algebra(ring)) is not None
             for label in range(max(by_isomorphism) + 1)]

    report.counts = {'algebras': len(algebras), 'isomorphism_classes': max(by_isomorphism) + 1,
                     'isometry_classes': max(by_isometry) + 1, 'work': budget.spent}
    report.details = {'isomorphism_classes': _classes(algebras, by_isomorphism),
                      'isometry_classes': _classes(algebras, by_isometry),
                      'split': split,
                      'representation_counts_consistent': consistent}
    if by_isomorphism == by_isometry:
        report.verdict = PASS
    else:
        report.verdict = FAIL
        report.reason = "isomorphism and isometry partitions differ"
        first, second = next((i, j) for i in range(len(algebras)) for j in range(i)
                             if (by_isomorphism[i] == by_isomorphism[j]) != (by_isometry[i] == by_isometry[j]))
        report.witness = [[str(algebras[first].a), str(algebras[first].b)],
                          [str(algebras[second].a), str(algebras[second].b)]]
        report.details['rechecked'] = norm_theorem_violated(ring, report.witness)
    report.stamp(time.perf_counter() - started)
    return report


def norm_theorem_violated(ring: RingSpec, witness: list) -> bool:
    """
    True when the two (a, b) pairs are isomorphic but not isometric, or
    isometric but not isomorphic
    """
    first, second = (QuaternionAlgebra(ring, ring.parse_elem(a), ring.parse_elem(b)) for a, b in witness)
    isomorphic = find_quaternion_isomorphism(first, second) is not None
    isometric = find_isometry(norm_form(first), norm_form(second)) is not None
    return isomorphic != isometric


GROUPS = (O, SO, SL1, MU2, AUT)


def group_points(which: str, spec: AlgebraSpec, budget: WorkBudget) -> PointSet:
    if which == SL1:
        return sl1_elements(spec)
    if which == MU2:
        return mu2_elements(spec.ring)
    if which == O:
        return orthogonal_elements(norm_form(spec), budget)
    if which == SO:
        return special_orthogonal_elements(norm_form(spec), budget)
    if which == AUT:
        return aut_enumerate(spec, budget)
    raise ValueError(f"unknown group {which!r}, expected one of {', '.join(GROUPS)}")


def cmd_group(which: str, algebra: Union[AlgebraFile, AlgebraSpec], options: RunOptions = None,
              list_elements: bool = False) -> Report:
    """
    Enumerate the points of a group attached to an algebra and report its order.

    Raises
    ------
    InfiniteRing
        For algebras over Z and Q
    """
    options = options or RunOptions()
    spec = _as_spec(algebra)
    spec.ring.require_finite()
    started = time.perf_counter()
    budget = WorkBudget(options.budget)
    report = Report(f'group-{which}', str(spec.ring), str(spec), SKIPPED)
    try:
        points = group_points(which, spec, budget)
    except (exceptions.BudgetExceeded, exceptions.UnsupportedRing) as e:
        report.reason = f"{type(e).__name__}: {e}"
    else:
        report.verdict = PASS
        report.counts = {'order': len(points), 'work': budget.spent}
        if list_elements:
            report.details = {'elements': [encode_witness(p) for p in points]}
    report.stamp(time.perf_counter() - started)
    return report
