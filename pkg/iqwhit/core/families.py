__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from sympy import Symbol
from sympy.polys.rings import PolyElement

from iqwhit.utils import logstream

from .partitions import (
    EMPTY,
    Partition,
    b_macdonald,
    contains,
    eta,
    is_horizontal_strip,
    kappa,
    partitions_up_to,
    psi_macdonald,
    psibar_macdonald,
    reachable,
    skew_stats,
    strip_predecessors,
    strip_successors,
)
from .polyspace import SymFuncTrunc, embed, poly_ring, substitute
from .scalars import (
    MacdField,
    RatQ,
    format_scalar,
    q,
    qpoch,
    substitute_q,
    to_float,
)

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

FAMILIES = ('F', 'Fbar', 'Ftilde', 'W', 'HLQ', 'MacdP', 'MacdQ', 'j', 'J')

# Families whose n-variable polynomials restrict to n-1 variables at x_n = 0.
STABLE = ('F', 'Fbar', 'W', 'HLQ', 'MacdP', 'MacdQ', 'j', 'J')

def check_family(family: str) -> str:
    if family not in FAMILIES:
        raise ValueError(
            f'Unknown family "{family}" - must be one of {FAMILIES}'
        )
    return family

def family_field(family: str):
    """Scalar field the coefficients of ``family`` live in."""
    return MacdField if family in ('MacdP', 'MacdQ') else RatQ

class UniWeight:
    """
    One-variable branching weight ``sum c_i x^i``, divided by ``(1+x)^pole``
    for the dual inhomogeneous Hall-Littlewood family.
    """

    def __init__(self, coeffs=(), pole: int = 0, field=None):
        self._field = RatQ if field is None else field
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self._coeffs = tuple(coeffs)
        self._pole = pole if coeffs else 0

    @classmethod
    def from_poly(cls, poly: PolyElement, pole: int = 0, field=None):
        terms = dict(poly)
        degree = max((e[0] for e in terms), default=-1)
        zero = poly.ring.domain.zero
        return cls(
            [terms.get((e,), zero) for e in range(degree + 1)],
            pole=pole, field=field,
        )

    def __str__(self):
        num = ' + '.join(
            f'({format_scalar(c)})*x^{i}' for i, c in enumerate(self._coeffs) if c
        ) or '0'
        if self._pole:
            return f'({num}) / (1+x)^{self._pole}'
        return num

    def __repr__(self):
        return f'<UniWeight: {self}>'

    def __bool__(self):
        return bool(self._coeffs)

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def pole(self) -> int:
        return self._pole

    @property
    def degree(self) -> int:
        """Degree of the numerator (-1 for the zero weight)."""
        return len(self._coeffs) - 1

    @property
    def field(self):
        return self._field

    def numerator(self, x, qval=None):
        numeric = isinstance(x, float)
        acc = 0.0 if numeric else self._field.zero
        for c in reversed(self._coeffs):
            acc = acc * x + (to_float(c, qval) if numeric else c)
        return acc

    def __call__(self, x, qval=None):
        """
        Value at ``x``. Floats need ``qval`` to evaluate coefficients in ``q``.
        """
        if self._pole:
            if (isinstance(x, float) and x == -1.0) or (
                not isinstance(x, float) and not (x + 1)):
                raise ValueError(
                    f'Weight {self} has a pole at x = -1'
                )
            return self.numerator(x, qval) / (1 + x)**self._pole
        return self.numerator(x, qval)

    def coefficient(self, e: int):
        """
        Coefficient of ``x^e``; a power-series coefficient when there is a
        pole.
        """
        if e < 0:
            return self._field.zero
        if not self._pole:
            if e < len(self._coeffs):
                return self._coeffs[e]
            return self._field.zero
        k, total = self._pole, self._field.zero
        for i, c in enumerate(self._coeffs[:e + 1]):
            j = e - i
            total = total + c * ((-1)**j * comb(k + j - 1, j))
        return total

    def scaled(self, c) -> 'UniWeight':
        return UniWeight([a * c for a in self._coeffs], self._pole, self._field)

    def as_poly(self, R, index: int) -> PolyElement:
        """Numerator placed in variable ``index`` (0-based) of ring ``R``."""
        terms = {}
        for e, c in enumerate(self._coeffs):
            if c:
                exp = [0] * R.ngens
                exp[index] = e
                terms[tuple(exp)] = c
        return R.from_dict(terms)

def _x(field):
    R = poly_ring(1, field)
    return R, R.gens[0]

def _f_weight(lam: Partition, mu: Partition, x):
    weight = x**0 * eta_outer(lam, mu)
    weight = weight * x**(sum(lam) - sum(mu))
    for r in range(1, len(lam) + 1):
        weight = weight * qpoch(x, mu.part(r) - lam.part(r + 1), q)
    return weight

def eta_outer(lam: Partition, mu: Partition):
    """
    ``prod_r (q;q)_{lam_r-lam_{r+1}} / ((q;q)_{lam_r-mu_r} (q;q)_{mu_r-lam_{r+1}})``,
    the q-Whittaker branching coefficient.
    """
    num, den = RatQ.one, RatQ.one
    for r in range(1, len(lam) + 1):
        num = num * qpoch(q, lam.part(r) - lam.part(r + 1))
        den = den * qpoch(q, lam.part(r) - mu.part(r))
        den = den * qpoch(q, mu.part(r) - lam.part(r + 1))
    return num / den

@lru_cache(maxsize=None)
def _one_var(family: str, lam: Partition, mu: Partition) -> UniWeight:
    field = family_field(family)
    if not is_horizontal_strip(mu, lam):
        return UniWeight(field=field)

    R, x = _x(field)
    size = sum(lam) - sum(mu)

    if family == 'F':
        return UniWeight.from_poly(_f_weight(lam, mu, x))

    if family == 'Fbar':
        base = _one_var('F', lam, mu)
        return UniWeight(
            [c * (-1)**(i + size) for i, c in enumerate(base.coeffs)]
        )

    if family == 'Ftilde':
        weight = x**0 * eta(lam, mu)
        for r in range(1, len(lam) + 1):
            for i in range(1, lam.part(r) - mu.part(r) + 1):
                weight = weight * (x - q**(i - 1))
        return UniWeight.from_poly(weight)

    if family == 'W':
        return UniWeight.from_poly(x**size * eta_outer(lam, mu))

    if family == 'HLQ':
        return UniWeight.from_poly(x**size * kappa(lam, mu))

    if family == 'MacdP':
        return UniWeight.from_poly(x**size * psi_macdonald(lam, mu), field=field)

    if family == 'MacdQ':
        return UniWeight.from_poly(x**size * psibar_macdonald(lam, mu), field=field)

    stats = skew_stats(lam, mu)
    if family == 'j':
        # one x per maximal run of nonempty columns; the top term is the HLQ weight
        weight = x**(size - len(stats.F_set)) * kappa(lam, mu)
        for i in sorted(stats.F_set):
            weight = weight * (x + q**lam.multiplicity(i))
        return UniWeight.from_poly(weight)

    # J: numerator over (1+x)^(r(mu/lam~) + |lam/mu|)
    weight = x**size * kappa(lam, mu)
    for i in sorted(stats.E_set):
        weight = weight * (1 + x * q**lam.multiplicity(i))
    return UniWeight.from_poly(weight, pole=(stats.r_tilde or 0) + size)

def one_var(family: str, lam, mu) -> UniWeight:
    """
    One-variable skew weight of ``family`` for the step ``mu -> lam``; the zero
    weight unless ``lam/mu`` is a horizontal strip.

    :param family:  (str) One of ``FAMILIES``.

    :param lam:     (Partition) Outer shape.

    :param mu:      (Partition) Inner shape.
    """
    return _one_var(check_family(family), Partition(lam), Partition(mu))

@dataclass(frozen=True)
class RationalPoly:
    """
    ``numer / prod_i (1+x_i)^poles[i]``: the exact multi-variable value of the
    dual inhomogeneous Hall-Littlewood family.
    """
    numer: PolyElement
    poles: tuple

    def __bool__(self):
        return bool(self.numer)

    def _lift(self, poles: tuple) -> PolyElement:
        R = self.numer.ring
        out = self.numer
        for i, (have, want) in enumerate(zip(self.poles, poles)):
            out = out * (1 + R.gens[i])**(want - have)
        return out

    def __add__(self, other):
        if not isinstance(other, RationalPoly):
            return NotImplemented
        if not other:
            return self
        if not self:
            return other
        poles = tuple(max(a, b) for a, b in zip(self.poles, other.poles))
        return RationalPoly(self._lift(poles) + other._lift(poles), poles)

    def __mul__(self, other):
        if isinstance(other, RationalPoly):
            poles = tuple(a + b for a, b in zip(self.poles, other.poles))
            return RationalPoly(self.numer * other.numer, poles)
        return RationalPoly(self.numer * other, self.poles)

    def __call__(self, values, qval=None):
        denom = 1
        for v, k in zip(values, self.poles):
            if k and not (v + 1):
                raise ValueError('Rational value has a pole at x = -1')
            denom = denom * (1 + v)**k
        return substitute(self.numer, values, qval) / denom

    def series(self, D: int, total: bool = False) -> PolyElement:
        """
        Power-series expansion truncated at degree ``D`` in each variable, or
        in total degree when ``total`` is set.
        """
        R = self.numer.ring
        out = self.numer
        for i, k in enumerate(self.poles):
            if not k:
                continue
            x = R.gens[i]
            factor = R.from_dict({
                tuple(j if a == i else 0 for a in range(R.ngens)):
                    R.domain.convert((-1)**j * comb(k + j - 1, j))
                for j in range(D + 1)
            })
            out = out * factor
            out = R.from_dict({
                e: c for e, c in out.items()
                if (sum(e) <= D if total else e[i] <= D)
            })
        if total:
            return R.from_dict({e: c for e, c in out.items() if sum(e) <= D})
        return R.from_dict({e: c for e, c in out.items() if max(e) <= D})

def _zero_value(family: str, n: int):
    R = poly_ring(n, family_field(family))
    if family == 'J':
        return RationalPoly(R.zero, (0,) * n)
    return R.zero

def _place(weight: UniWeight, R, index: int, family: str):
    poly = weight.as_poly(R, index)
    if family == 'J':
        poles = [0] * R.ngens
        poles[index] = weight.pole
        return RationalPoly(poly, tuple(poles))
    return poly

def _embed(value, R, family: str):
    if family == 'J':
        poles = value.poles + (0,) * (R.ngens - len(value.poles))
        return RationalPoly(embed(value.numer, R), poles)
    return embed(value, R)

@lru_cache(maxsize=None)
def _expand(family: str, lam: Partition, mu: Partition, n: int):
    R = poly_ring(n, family_field(family))
    if not contains(lam, mu) or len(lam) - len(mu) > n:
        return _zero_value(family, n)
    if n == 1:
        return _place(_one_var(family, lam, mu), R, 0, family)

    total = _zero_value(family, n)
    for nu in strip_predecessors(lam, floor=mu):
        if not reachable(mu, nu, n - 1):
            continue
        weight = _one_var(family, lam, nu)
        if not weight:
            continue
        head = _expand(family, nu, mu, n - 1)
        if not head:
            continue
        total = total + _embed(head, R, family) * _place(weight, R, n - 1, family)
    return total

def expand_skew(family: str, lam, mu, n: int):
    """
    The ``n``-variable skew polynomial of ``family`` by branching over chains
    ``mu = nu^0 < nu^1 < ... < nu^n = lam``. ``J`` gives a :class:`RationalPoly`.

    :param family:  (str) One of ``FAMILIES``.

    :param lam:     (Partition) Outer shape.

    :param mu:      (Partition) Inner shape.

    :param n:       (int) Number of variables, at least one.
    """
    if n < 1:
        raise ValueError(f'expand_skew needs n >= 1, got {n}')
    return _expand(check_family(family), Partition(lam), Partition(mu), n)

def eval_skew(family: str, lam, mu, values, qval=None):
    """
    Value of the skew polynomial at ``values`` through the same chain
    recursion with scalar weights. Exact values give an exact result; floats
    need ``qval``. An exact ``qval`` with exact values substitutes ``q`` at
    the end.
    """
    family = check_family(family)
    lam, mu = Partition(lam), Partition(mu)
    values = list(values)
    n = len(values)
    if n < 1:
        raise ValueError('eval_skew needs at least one value')
    numeric = any(isinstance(v, float) for v in values)
    if numeric:
        if qval is None:
            raise ValueError('Numeric evaluation needs a value for q')
        qval = float(qval)
        values = [float(v) for v in values]

    zero = 0.0 if numeric else family_field(family).zero
    if not contains(lam, mu) or len(lam) - len(mu) > n:
        return zero

    table = {mu: 1.0 if numeric else family_field(family).one}
    for i, v in enumerate(values):
        remaining = n - i - 1
        nxt = {}
        for nu, acc in table.items():
            for rho in strip_successors(nu, ceiling=lam):
                if not reachable(rho, lam, remaining):
                    continue
                weight = _one_var(family, rho, nu)
                if not weight:
                    continue
                nxt[rho] = nxt.get(rho, zero) + acc * weight(v, qval)
        table = nxt

    result = table.get(lam, zero)
    if not numeric and qval is not None and family_field(family) == RatQ:
        return substitute_q(result, qval)
    return result

def variable_degree_cap(family: str, lam: Partition, mu: Partition) -> int:
    """Upper bound on the degree of any single variable in the skew polynomial."""
    return lam.part(1)

@lru_cache(maxsize=None)
def _monomial_coefficient(family: str, lam: Partition, mu: Partition, exps: tuple):
    n = len(exps)
    field = family_field(family)
    table = {mu: field.one}
    for i, e in enumerate(exps):
        remaining = n - i - 1
        nxt = {}
        for nu, acc in table.items():
            for rho in strip_successors(nu, ceiling=lam):
                if not reachable(rho, lam, remaining):
                    continue
                c = _one_var(family, rho, nu).coefficient(e)
                if c:
                    nxt[rho] = nxt.get(rho, field.zero) + acc * c
        table = nxt
        if not table:
            return field.zero
    return table.get(lam, field.zero)

def monomial_coefficient(family: str, lam, mu, exps) -> object:
    """
    Coefficient of ``x^exps`` in the ``len(exps)``-variable skew polynomial
    (a series coefficient for ``J``).
    """
    return _monomial_coefficient(
        check_family(family), Partition(lam), Partition(mu), tuple(exps)
    )

def mcoords(family: str, lam, mu, n: int, D: int = None) -> dict:
    """
    Monomial-symmetric coordinates of the ``n``-variable skew polynomial,
    restricted to ``|kappa| <= D`` when ``D`` is given (required for ``J``).
    """
    family = check_family(family)
    lam, mu = Partition(lam), Partition(mu)
    if family == 'J' and D is None:
        raise ValueError('The J family is a series and needs a degree cap D')
    if not contains(lam, mu) or len(lam) - len(mu) > n:
        return {}
    cap = D if family == 'J' else variable_degree_cap(family, lam, mu)
    out = {}
    top = n * cap if D is None else min(D, n * cap)
    for kappa_ in partitions_up_to(top, max_part=cap, max_length=n):
        exps = tuple(kappa_) + (0,) * (n - len(kappa_))
        c = _monomial_coefficient(family, lam, mu, exps)
        if c:
            out[kappa_] = c
    return out

def lift_family(family: str, lam, mu=EMPTY, D: int = None) -> SymFuncTrunc:
    """
    The symmetric function of a stable family up to degree ``D``, read from
    ``D`` variables.
    """
    family = check_family(family)
    lam, mu = Partition(lam), Partition(mu)
    if family not in STABLE:
        raise ValueError(
            f'Family "{family}" is not stable in the number of variables'
        )
    D = sum(lam) if D is None else D
    n = max(D, 1)
    coeffs = mcoords(family, lam, mu, n, D=D)
    return SymFuncTrunc('m', D, coeffs, family_field(family))

def macd_q_from_p(lam, mu):
    """
    ``b_lam(q,t) / b_mu(q,t)``, the factor turning the Macdonald ``P`` into
    ``Q``.
    """
    lam, mu = Partition(lam), Partition(mu)
    if not contains(lam, mu):
        raise ValueError(f'macd_q_from_p needs {mu} inside {lam}')
    return b_macdonald(lam) / b_macdonald(mu)

def macd_specialize(value, q_value=None, t_value=None):
    """
    Specialize a two-parameter value. Setting ``t = 0`` keeps ``q``; setting
    ``q = 0`` renames ``t`` to ``q``; both give a ``RatQ`` value.
    """
    expr = value.as_expr() if hasattr(value, 'as_expr') else value
    qs, ts = Symbol('q'), Symbol('t')
    if q_value is not None and t_value is not None:
        expr = expr.subs({qs: q_value, ts: t_value})
    elif t_value is not None:
        expr = expr.subs(ts, t_value)
    elif q_value is not None:
        expr = expr.subs(qs, q_value).subs(ts, qs)
    return RatQ.from_expr(expr)

