__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import logging
from functools import lru_cache
from math import factorial

from sympy import QQ
from sympy.polys.rings import PolyElement, ring
from sympy.utilities.iterables import multiset_permutations

from iqwhit.mixins import CoefficientsMixin, UIMixin
from iqwhit.utils import hash_id, logstream

from .partitions import EMPTY, Partition, partitions_of
from .scalars import (
    MacdField,
    RatQ,
    coerce,
    format_scalar,
    mq,
    mt,
    q,
    same,
    to_float,
)

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

BASES = ('m', 'e', 'p')
OMEGA_MODES = ('q0', '0q', 'qt', 'classical')

_omega_aliases = {
    'q,0': 'q0', 'omega_q0': 'q0',
    '0,q': '0q', 'omega_0q': '0q',
    'q,t': 'qt', 'omega_qt': 'qt',
}

# MultiPoly: sympy PolyElement over RatQ (or MacdField), x1..xn.

@lru_cache(maxsize=None)
def poly_ring(n: int, field=None, prefix: str = 'x'):
    """
    The ring of ``n``-variable polynomials ``prefix1..prefixn`` over ``field``.
    """
    if n < 1:
        raise ValueError(f'A polynomial ring needs n >= 1, got {n}')
    field = RatQ if field is None else field
    names = ','.join(f'{prefix}{i}' for i in range(1, n + 1))
    return ring(names, field.to_domain())[0]

@lru_cache(maxsize=None)
def pair_ring(n: int, m: int, field=None):
    """Ring in ``x1..xn, y1..ym`` used by the Cauchy verifiers."""
    field = RatQ if field is None else field
    names = [f'x{i}' for i in range(1, n + 1)] + [f'y{j}' for j in range(1, m + 1)]
    return ring(','.join(names), field.to_domain())[0]

def nvars(f: PolyElement) -> int:
    return f.ring.ngens

def _check_pair(f: PolyElement, g: PolyElement):
    if nvars(f) != nvars(g):
        raise ValueError(
            f'Variable-count mismatch: {nvars(f)} against {nvars(g)}'
        )

def poly_add(f: PolyElement, g: PolyElement) -> PolyElement:
    _check_pair(f, g)
    return f + g

def poly_mul(f: PolyElement, g: PolyElement) -> PolyElement:
    _check_pair(f, g)
    return f * g

def poly_scale(f: PolyElement, c) -> PolyElement:
    return f * c

def drop_last_variable(f: PolyElement) -> PolyElement:
    """Set the last variable to zero, landing in the ring with one fewer."""
    n = nvars(f)
    if n < 2:
        raise ValueError('Cannot drop the only variable')
    target = poly_ring(n - 1, f.ring.domain.field, str(f.ring.symbols[0])[0])
    return target.from_dict(
        {exp[:-1]: c for exp, c in f.items() if exp[-1] == 0}
    )

def homogeneous_component(f: PolyElement, d: int) -> PolyElement:
    """Total-degree ``d`` part of ``f``."""
    return f.ring.from_dict({exp: c for exp, c in f.items() if sum(exp) == d})

def truncate(f: PolyElement, D: int, positions=None) -> PolyElement:
    """
    Drop every term whose degree in the variables at ``positions`` (all by
    default) exceeds ``D``.
    """
    positions = range(nvars(f)) if positions is None else positions
    return f.ring.from_dict(
        {exp: c for exp, c in f.items() if sum(exp[i] for i in positions) <= D}
    )

def embed(f: PolyElement, target, offset: int = 0) -> PolyElement:
    """Move ``f`` into ``target``, its variables starting at ``offset``."""
    n, size = nvars(f), target.ngens
    if offset + n > size:
        raise ValueError(
            f'Cannot place {n} variables at offset {offset} in a ring of {size}'
        )
    terms = {}
    for exp, c in f.items():
        full = [0] * size
        full[offset:offset + n] = exp
        terms[tuple(full)] = c
    return target.from_dict(terms)

def min_degree(f: PolyElement) -> int:
    if not f:
        raise ValueError('The zero polynomial has no lowest degree')
    return min(sum(exp) for exp in f.keys())

def substitute(f: PolyElement, values, qval=None):
    """
    Evaluate ``f`` at ``values``. Float values need ``qval`` to evaluate the
    coefficients numerically.
    """
    values = list(values)
    if len(values) != nvars(f):
        raise ValueError(
            f'Expected {nvars(f)} values, got {len(values)}'
        )
    numeric = any(isinstance(v, float) for v in values)
    total = 0.0 if numeric else f.ring.domain.zero
    for exp, c in f.items():
        term = to_float(c, qval) if numeric else c
        for v, e in zip(values, exp):
            if e:
                term = term * v**e
        total = total + term
    return total

def transpose_variables(f: PolyElement, i: int) -> PolyElement:
    """Swap variables ``i`` and ``i+1`` (1-based)."""
    terms = {}
    for exp, c in f.items():
        exp = list(exp)
        exp[i - 1], exp[i] = exp[i], exp[i - 1]
        terms[tuple(exp)] = c
    return f.ring.from_dict(terms)

def monomial_key(exp: tuple) -> tuple:
    """Graded reverse-lexicographic key on exponent vectors."""
    return (sum(exp), tuple(-e for e in exp))

def first_monomial(f: PolyElement):
    """Smallest monomial of ``f`` in graded reverse-lexicographic order."""
    if not f:
        return None
    return min(f.keys(), key=monomial_key)

def format_monomial(exp: tuple, names=None) -> str:
    names = names or [f'x{i}' for i in range(1, len(exp) + 1)]
    pieces = [
        n if e == 1 else f'{n}^{e}'
        for n, e in zip(names, exp) if e
    ]
    return '*'.join(pieces) or '1'

def symmetry_witness(f: PolyElement):
    """
    First adjacent transposition ``i`` breaking the symmetry of ``f`` with a
    witnessing monomial, or None when ``f`` is symmetric.
    """
    for i in range(1, nvars(f)):
        diff = f - transpose_variables(f, i)
        if diff:
            return i, first_monomial(diff)
    return None

# Expansion: finitely supported coefficients over a basis family.

class Expansion(CoefficientsMixin, UIMixin):
    """
    Finite expansion ``sum_lam c_lam B_lam`` in a basis family (``F``, ``W``,
    ``Ftilde``, ``j``, ``m``, ``e``, ``p``), optionally truncated at a
    degree.
    """

    def __init__(
            self,
            basis: str,
            coeffs: dict = None,
            truncation: int = None,
            meta: dict = None,
        ):
        """
        :param basis:       (str) Family tag of the basis elements.

        :param coeffs:      (dict) Partition to scalar map; zeros are dropped.

        :param truncation:  (int) Degree cap, None for an exact finite expansion.

        :param meta:        (dict) Extra metadata about how this was computed.
        """
        self._basis = basis
        self._truncation = truncation
        coeffs = self._clean(coeffs or {})
        if truncation is not None:
            coeffs = {k: v for k, v in coeffs.items() if sum(k) <= truncation}
        self._coeffs = coeffs

        terms = (f'{k}:{format_scalar(v)}' for k, v in self.items())
        self._id = f'{basis}-{hash_id(basis, truncation, *terms)}'
        self._meta = (meta or {}) | {
            'basis': basis,
            'truncation': self.truncation_label,
            'terms': len(self._coeffs),
        }

    def __str__(self):
        return f'<Expansion: {self._id} (basis: {self._basis}, terms: {len(self)})>'

    def __repr__(self):
        repr = super().__repr__().split('\n')
        repr.append('Coefficients:')
        repr += self._coefficient_lines()
        return '\n'.join(repr)

    def __eq__(self, other):
        if not isinstance(other, Expansion):
            return NotImplemented
        if self._truncation != other._truncation:
            raise ValueError(
                f'Cannot compare expansions truncated at '
                f'{self.truncation_label} and {other.truncation_label}'
            )
        if self._basis != other._basis:
            return False
        keys = set(self._coeffs) | set(other._coeffs)
        return all(same(self[k], other[k]) for k in keys)

    __hash__ = None

    def __add__(self, other):
        self._check_compatible(other)
        coeffs = dict(self._coeffs)
        for k, v in other._coeffs.items():
            coeffs[k] = coeffs.get(k, 0) + v
        return Expansion(self._basis, coeffs, self._truncation)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> 'Expansion':
        return Expansion(
            self._basis,
            {k: v * c for k, v in self._coeffs.items()},
            self._truncation,
        )

    def _check_compatible(self, other):
        if self._basis != other._basis:
            raise ValueError(
                f'Basis mismatch: {self._basis} against {other._basis}'
            )
        if self._truncation != other._truncation:
            raise ValueError(
                f'Truncation mismatch: {self.truncation_label} against '
                f'{other.truncation_label}'
            )

    @property
    def basis(self) -> str:
        return self._basis

    @property
    def truncation(self):
        return self._truncation

    @property
    def truncation_label(self):
        return 'exact-finite' if self._truncation is None else self._truncation

    def truncate(self, D: int) -> 'Expansion':
        """Restrict to ``|lam| <= D`` and record the truncation."""
        if self._truncation is not None and D > self._truncation:
            raise ValueError(
                f'Cannot raise the truncation from {self._truncation} to {D}'
            )
        return Expansion(self._basis, self._coeffs, D, meta=self._meta)

    def compose(self, inner, basis: str = None) -> 'Expansion':
        """
        Substitute ``inner(lam)`` (an Expansion) for every basis element,
        keeping this truncation.
        """
        coeffs, target = {}, basis
        for lam, c in self.items():
            sub = inner(lam)
            target = target or sub.basis
            for mu, d in sub.items():
                coeffs[mu] = coeffs.get(mu, 0) + c * d
        return Expansion(target or self._basis, coeffs, self._truncation)

    def map_coefficients(self, fn) -> 'Expansion':
        """Apply ``fn`` to every coefficient, e.g. to substitute ``q``."""
        return Expansion(
            self._basis,
            {k: fn(v) for k, v in self._coeffs.items()},
            self._truncation,
            meta=self._meta,
        )

    def to_dict(self) -> dict:
        """JSON form: basis, truncation and one entry per partition."""
        return {
            'basis': self._basis,
            'truncation': self.truncation_label,
        } | self._json_coefficients()

    def help(self):
        """Help method for this class"""
        print('Expansion Help:')
        print(' > expansion[lam] - Coefficient at a partition (zero when absent)')
        print(' > expansion.truncate() - Restrict to a lower degree')
        print(' > expansion.compose() - Substitute another expansion for each basis element')
        print(' > expansion.to_dict() - JSON-ready form')
        super().help(additionals=['basis', 'truncation'])

def to_mbasis(f: PolyElement) -> Expansion:
    """
    Monomial symmetric coordinates of a symmetric polynomial.
    """
    witness = symmetry_witness(f)
    if witness is not None:
        i, exp = witness
        raise ValueError(
            f'Polynomial is not symmetric under x{i} <-> x{i+1} '
            f'(monomial {format_monomial(exp)})'
        )
    coeffs = {}
    for exp, c in f.items():
        if all(exp[i] >= exp[i + 1] for i in range(len(exp) - 1)):
            coeffs[Partition(exp)] = c
    return Expansion('m', coeffs, meta={'variables': nvars(f)})

def mbasis_to_poly(coeffs, n: int, field=None) -> PolyElement:
    """
    Inverse of :func:`to_mbasis`: ``sum c_kappa m_kappa(x1..xn)``.
    """
    R = poly_ring(n, field)
    items = coeffs.items() if isinstance(coeffs, dict) else list(coeffs.items())
    terms = {}
    for kappa, c in items:
        kappa = Partition(kappa)
        if len(kappa) > n:
            continue
        padded = list(kappa) + [0] * (n - len(kappa))
        for perm in multiset_permutations(padded):
            terms[tuple(perm)] = c
    return R.from_dict(terms)

def mcoords(f: PolyElement, D: int = None) -> dict:
    """Monomial coordinates of a symmetric ``f`` without the symmetry check."""
    coeffs = {}
    for exp, c in f.items():
        if D is not None and sum(exp) > D:
            continue
        if all(exp[i] >= exp[i + 1] for i in range(len(exp) - 1)):
            coeffs[Partition(exp)] = c
    return coeffs

# SymFuncTrunc: degree-truncated symmetric functions.

def _rational(num: int, den: int, field):
    return field.field_new(QQ(num, den))

def _concat(a: Partition, b: Partition) -> Partition:
    return Partition(sorted(tuple(a) + tuple(b), reverse=True))

def _multiply(x: dict, y: dict, D: int) -> dict:
    """Product in a multiplicative basis (``e`` or ``p``)."""
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            if sum(a) + sum(b) > D:
                continue
            key = _concat(a, b)
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}

def _pk_count(lam: Partition, mu: Partition, k: int) -> int:
    count = 0
    for i in range(len(mu)):
        if mu[i] < k:
            continue
        parts = list(mu)
        parts[i] -= k
        if Partition(sorted(parts, reverse=True)) == lam:
            count += 1
    return count

@lru_cache(maxsize=None)
def p_to_m(rho: Partition) -> dict:
    """
    Monomial coordinates of ``p_rho``; integer coefficients.

    The coefficient of ``m_mu`` in ``p_k m_lam`` counts the ``i`` with
    ``mu_i >= k`` and ``sort(mu - k e_i) = lam``.
    """
    current = {EMPTY: 1}
    for k in Partition(rho):
        nxt = {}
        for lam, c in current.items():
            candidates = set()
            for i in range(len(lam) + 1):
                parts = list(lam) + [0]
                parts[i] += k
                candidates.add(Partition(sorted(parts, reverse=True)))
            for mu in candidates:
                nxt[mu] = nxt.get(mu, 0) + c * _pk_count(lam, mu, k)
        current = nxt
    return {k: v for k, v in current.items() if v}

@lru_cache(maxsize=None)
def e_in_p(n: int, field=None) -> dict:
    """``e_n = sum_rho (-1)^(n-l(rho)) p_rho / z_rho``."""
    field = RatQ if field is None else field
    out = {}
    for rho in partitions_of(n):
        z = 1
        for i in set(rho):
            m = rho.count(i)
            z *= i**m * factorial(m)
        out[rho] = _rational((-1)**(n - len(rho)), z, field)
    return out

@lru_cache(maxsize=None)
def p_in_e(n: int, field=None) -> dict:
    """``p_n = sum_rho (-1)^(n-l(rho)) n (l(rho)-1)! / prod m_i! e_rho``."""
    field = RatQ if field is None else field
    out = {}
    for rho in partitions_of(n):
        den = 1
        for i in set(rho):
            den *= factorial(rho.count(i))
        num = (-1)**(n - len(rho)) * n * factorial(len(rho) - 1)
        out[rho] = _rational(num, den, field)
    return out

def _product_of_parts(kappa: Partition, single, D: int, field) -> dict:
    out = {EMPTY: field.one}
    for k in kappa:
        out = _multiply(out, single(k, field), D)
    return out

def _m_to_p(coeffs: dict, field) -> dict:
    remaining = dict(coeffs)
    result = {}
    while remaining:
        kappa = min(remaining, key=lambda k: (sum(k), tuple(k)))
        expansion = p_to_m(kappa)
        factor = remaining[kappa] / expansion[kappa]
        result[kappa] = result.get(kappa, 0) + factor
        for mu, v in expansion.items():
            value = remaining.get(mu, 0) - factor * v
            if value:
                remaining[mu] = value
            else:
                remaining.pop(mu, None)
    return {k: coerce(v, field) for k, v in result.items() if v}

def _omega_factor(n: int, mode: str, field):
    sign = (-1)**(n - 1)
    if mode == 'classical':
        return field.one * sign
    qg = mq if field == MacdField else q
    if field != MacdField and mode == 'qt':
        raise ValueError('omega mode "qt" needs the two-parameter field')
    if mode == 'q0':
        return sign * (1 - qg**n)
    if mode == '0q':
        return sign / (1 - qg**n)
    return sign * (1 - mq**n) / (1 - mt**n)

class SymFuncTrunc(CoefficientsMixin):
    """
    Symmetric function truncated at degree ``D`` in the monomial (``m``),
    elementary (``e``) or power-sum (``p``) basis. Conversions go through the
    power sums.
    """

    def __init__(self, basis: str, max_degree: int, coeffs: dict = None, field=None):
        if basis not in BASES:
            raise ValueError(
                f'Unknown basis "{basis}" - must be one of {BASES}'
            )
        if max_degree < 0:
            raise ValueError(f'Truncation degree must be >= 0, got {max_degree}')
        self._basis = basis
        self._D = max_degree
        self._field = RatQ if field is None else field
        self._coeffs = {
            k: coerce(v, self._field)
            for k, v in self._clean(coeffs or {}).items()
            if sum(k) <= max_degree
        }

    def _zero(self):
        return self._field.zero

    def __str__(self):
        terms = ' + '.join(
            f'({format_scalar(c)})*{self._basis}[{lam}]' for lam, c in self.items()
        )
        return terms or '0'

    def __repr__(self):
        return f'<SymFuncTrunc: {self._basis}-basis, D={self._D}, terms={len(self)}>'

    @property
    def basis(self) -> str:
        return self._basis

    @property
    def max_degree(self) -> int:
        return self._D

    @property
    def field(self):
        return self._field

    def _like(self, coeffs: dict, basis: str = None, D: int = None, field=None):
        return SymFuncTrunc(
            basis or self._basis,
            self._D if D is None else D,
            coeffs,
            field or self._field,
        )

    def with_field(self, field) -> 'SymFuncTrunc':
        return self._like(dict(self._coeffs), field=field)

    def to_basis(self, target: str) -> 'SymFuncTrunc':
        """Exact change of basis, keeping ``D``."""
        if target not in BASES:
            raise ValueError(
                f'Unknown basis "{target}" - must be one of {BASES}'
            )
        if target == self._basis:
            return self
        p = self._to_p()
        if target == 'p':
            return self._like(p, basis='p')
        if target == 'm':
            out = {}
            for rho, c in p.items():
                for mu, v in p_to_m(rho).items():
                    out[mu] = out.get(mu, 0) + c * v
            return self._like(out, basis='m')
        out = {}
        for rho, c in p.items():
            part = _product_of_parts(rho, p_in_e, self._D, self._field)
            for kappa, v in part.items():
                out[kappa] = out.get(kappa, 0) + c * v
        return self._like(out, basis='e')

    def _to_p(self) -> dict:
        if self._basis == 'p':
            return dict(self._coeffs)
        if self._basis == 'm':
            return _m_to_p(self._coeffs, self._field)
        out = {}
        for kappa, c in self._coeffs.items():
            part = _product_of_parts(kappa, e_in_p, self._D, self._field)
            for rho, v in part.items():
                out[rho] = out.get(rho, 0) + c * v
        return out

    def homogeneous(self, d: int) -> 'SymFuncTrunc':
        return self._like({k: v for k, v in self._coeffs.items() if sum(k) == d})

    def truncate(self, D: int) -> 'SymFuncTrunc':
        return self._like(dict(self._coeffs), D=min(D, self._D))

    def __add__(self, other):
        if not isinstance(other, SymFuncTrunc):
            return NotImplemented
        other = other.to_basis(self._basis)
        D = min(self._D, other._D)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return self._like(out, D=D)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SymFuncTrunc):
            D = min(self._D, other._D)
            a, b = self.to_basis('p'), other.to_basis('p')
            prod = _multiply(a._coeffs, b._coeffs, D)
            return self._like(prod, basis='p', D=D).to_basis(self._basis)
        return self._like({k: v * other for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymFuncTrunc):
            return NotImplemented
        D = min(self._D, other._D)
        diff = self.truncate(D) - other.to_basis(self._basis).truncate(D)
        return not diff._coeffs

    __hash__ = None

    def omega(self, mode: str = 'q0') -> 'SymFuncTrunc':
        """
        Multiplicative involution-type maps on power sums:

        - ``q0``: ``p_n -> (-1)^(n-1) (1-q^n) p_n``
        - ``0q``: ``p_n -> (-1)^(n-1) p_n / (1-q^n)``
        - ``qt``: ``p_n -> (-1)^(n-1) (1-q^n)/(1-t^n) p_n`` (two parameters)
        - ``classical``: ``p_n -> (-1)^(n-1) p_n``
        """
        mode = _omega_aliases.get(mode, mode)
        if mode not in OMEGA_MODES:
            raise ValueError(
                f'Unknown omega mode "{mode}" - must be one of {OMEGA_MODES}'
            )
        field = MacdField if mode == 'qt' else self._field
        source = self.with_field(field) if field != self._field else self
        p = source.to_basis('p')
        out = {}
        for rho, c in p._coeffs.items():
            factor = field.one
            for n in rho:
                factor = factor * _omega_factor(n, mode, field)
            out[rho] = c * factor
        return SymFuncTrunc('p', self._D, out, field).to_basis(self._basis)

    def to_dict(self) -> dict:
        return {
            'basis': self._basis,
            'max_degree': self._D,
        } | self._json_coefficients()

def lift(f: PolyElement, D: int) -> SymFuncTrunc:
    """
    Symmetric function determined by ``f`` up to degree ``D``; needs at
    least ``D`` variables.
    """
    n = nvars(f)
    if n < D:
        raise ValueError(
            f'Lifting to degree {D} needs at least {D} variables, got {n}'
        )
    expansion = to_mbasis(truncate(f, D))
    return SymFuncTrunc('m', D, expansion.coefficients, f.ring.domain.field)

def elementary(n: int, D: int = None) -> SymFuncTrunc:
    """``e_n`` as a truncated symmetric function."""
    D = n if D is None else D
    return SymFuncTrunc('e', D, {Partition((n,)) if n else EMPTY: 1})

def power_sum(n: int, D: int = None) -> SymFuncTrunc:
    D = n if D is None else D
    return SymFuncTrunc('p', D, {Partition((n,)) if n else EMPTY: 1})

def monomial(kappa, D: int = None) -> SymFuncTrunc:
    kappa = Partition(kappa)
    D = sum(kappa) if D is None else D
    return SymFuncTrunc('m', D, {kappa: 1})
