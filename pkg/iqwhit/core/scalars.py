"""
Exact and numeric scalars.

Every coefficient in iqwhit lives in one of the following:

- ``BigRat``: sympy's ``QQ`` (arbitrary precision rationals).
- ``PolyQ``: the polynomial ring ``QQ[q]``.
- ``RatQ``: the field ``QQ(q)``, with ``q`` its formal generator.
- ``MacdField``: the two-parameter field ``QQ(q, t)`` used only by the
  Macdonald family.
- ``float``: the numeric path, with ``q`` fixed in ``(0, 1)``.

The q-analogues below are written against a generic ``base`` so the same
code serves all of these.
"""

__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import logging
from functools import lru_cache

from sympy import QQ, sympify
from sympy.polys.fields import FracElement, field
from sympy.polys.rings import PolyElement

from iqwhit.utils import logstream

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

BigRat = QQ

RatQ, q = field('q', QQ)
PolyQ = RatQ.ring
q_poly = PolyQ.gens[0]

MacdField, mq, mt = field('q,t', QQ)

def formal_q(x=None):
    """
    The formal ``q`` compatible with ``x``: the generator named ``q`` of the
    ring or field ``x`` belongs to, else the ``RatQ`` generator.
    """
    parent = getattr(x, 'field', None) or getattr(x, 'ring', None)
    if parent is not None:
        for sym, gen in zip(parent.symbols, parent.gens):
            if str(sym) == 'q':
                return gen
    return q

def one_like(*values):
    """
    Multiplicative unit of the ring holding ``values`` (first nonzero wins).
    """
    for v in values:
        if isinstance(v, (PolyElement, FracElement)):
            parent = getattr(v, 'field', None) or v.ring
            return parent.one
        if isinstance(v, float):
            return 1.0
    for v in values:
        if v:
            return v**0
    return 1

def zero_like(*values):
    """Additive unit matching :func:`one_like`."""
    one = one_like(*values)
    return one - one

def is_zero(value) -> bool:
    return not value

def same(a, b) -> bool:
    """Exact equality that does not depend on the stored representation."""
    return not (a - b)

def qpoch(x, k: int, base=None):
    """
    The q-Pochhammer symbol ``(x;q)_k``.

    :param x:       (scalar) Any element of a commutative ring containing ``q``.

    :param k:       (int) Nonnegative length of the product.

    :param base:    (scalar) The value of ``q``, formal by default.

    >>> format_ratq(qpoch(q, 0))
    '1'
    """
    if k < 0:
        raise ValueError(
            f'q-Pochhammer length must be nonnegative, got {k}'
        )
    base = formal_q(x) if base is None else base
    result = None
    for i in range(k):
        factor = 1 - x * base**i
        result = factor if result is None else result * factor
    if result is None:
        return one_like(x, base)
    return result

@lru_cache(maxsize=None)
def _qbinom_row(n: int, base):
    row = [one_like(base)]
    for m in range(1, n + 1):
        new = [row[0]]
        for j in range(1, m):
            new.append(row[j - 1] + base**j * row[j])
        new.append(row[0])
        row = new
    return tuple(row)

def qbinom(n: int, k: int, base=None):
    """
    Gaussian binomial coefficient, through the recurrence
    ``C(n,k) = C(n-1,k-1) + q^k C(n-1,k)``. Returns a ``PolyQ`` element
    unless a ``base`` is given.
    """
    base = q_poly if base is None else base
    if k < 0 or n < 0 or k > n:
        return zero_like(base)
    return _qbinom_row(n, base)[k]

def qpoch_infinite(x: float, q: float, tol: float = 1e-15) -> float:
    """
    Numeric ``(x;q)_infinity``, stopping once ``|x q^i| < tol (1 - |q|)``.
    """
    if abs(q) >= 1:
        raise ValueError(
            f'(x;q)_infinity needs |q| < 1, got q={q}'
        )
    if tol <= 0:
        raise ValueError(f'Tolerance must be positive, got {tol}')

    result, term = 1.0, float(x)
    while abs(term) >= tol * (1 - abs(q)):
        result *= 1 - term
        term *= q
    return result

def coerce(value, target=None) -> FracElement:
    """
    Coerce ``value`` (int, rational, string such as ``"1-q"``, or an element of
    another exact field or ring) into the field ``target`` (``RatQ`` by
    default).
    """
    target = RatQ if target is None else target
    if isinstance(value, FracElement):
        if value.field == target:
            return value
        return target.from_expr(value.as_expr())
    if isinstance(value, PolyElement):
        return target.from_expr(value.as_expr())
    if isinstance(value, str):
        return target.from_expr(sympify(value))
    if isinstance(value, float):
        raise ValueError(
            f'Cannot place the float {value} in an exact field'
        )
    return target.field_new(value)

def to_ratq(value) -> FracElement:
    """Coerce ``value`` into ``RatQ``."""
    return coerce(value, RatQ)

def parse_scalar(text: str):
    """
    Parse a command-line scalar: ``"p/q"`` or an integer gives an exact
    ``BigRat``, a decimal gives a float.
    """
    text = text.strip()
    if not text:
        raise ValueError('Empty scalar')
    if any(ch in text for ch in '.eE') and '/' not in text:
        try:
            return float(text)
        except ValueError:
            raise ValueError(f'Could not read "{text}" as a decimal')
    try:
        return QQ.from_sympy(sympify(text))
    except Exception:
        raise ValueError(f'Could not read "{text}" as a rational')

def _eval_univariate(poly: PolyElement, value):
    exact = not isinstance(value, float)
    total = QQ.zero if exact else 0.0
    for (k,), c in poly.terms():
        c = c if exact else float(c)
        total += c * value**k
    return total

def substitute_q(value, qval):
    """
    Evaluate a ``RatQ`` (or ``PolyQ``) value at ``q = qval``. An exact
    ``qval`` gives a ``BigRat``, a float gives a float.
    """
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, PolyElement):
        value = to_ratq(value)
    if not isinstance(qval, float):
        if isinstance(qval, str):
            qval = parse_scalar(qval)
        elif not QQ.of_type(qval):
            qval = QQ.from_sympy(sympify(qval))
    num = _eval_univariate(value.numer, qval)
    den = _eval_univariate(value.denom, qval)
    if not den:
        raise ValueError(
            f'{format_ratq(value)} has a pole at q={qval}'
        )
    return num / den

def is_natural(value) -> bool:
    """
    True when ``value`` is a polynomial in q with nonnegative integer
    coefficients.
    """
    value = to_ratq(value)
    if value.denom.degree() > 0:
        return False
    d = value.denom.LC
    for c in value.numer.coeffs():
        c = c / d
        if c.denominator != 1 or c.numerator < 0:
            return False
    return True

def _format_poly(poly: PolyElement) -> tuple:
    terms = sorted(poly.terms(), key=lambda t: -t[0][0])
    if not terms:
        return '0', 1
    pieces = []
    for idx, ((k,), c) in enumerate(terms):
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mon = 'q' if k == 1 else f'q^{k}'
            body = mon if mag == 1 else f'{mag}*{mon}'
        if idx == 0:
            pieces.append(f'-{body}' if c < 0 else body)
        else:
            pieces.append(f'- {body}' if c < 0 else f'+ {body}')
    return ' '.join(pieces), len(terms)

def format_ratq(value) -> str:
    """
    Canonical text of a ``RatQ`` value: numerator and denominator as sums of
    ``c*q^k`` in decreasing ``k``, joined by ``" / "``.

    >>> format_ratq(1 - q)
    '-q + 1'
    """
    value = to_ratq(value)
    num, nterms = _format_poly(value.numer)
    if value.denom == 1:
        return num
    den, dterms = _format_poly(value.denom)
    if nterms > 1:
        num = f'({num})'
    if dterms > 1:
        den = f'({den})'
    return f'{num} / {den}'

def format_scalar(value) -> str:
    """Text form of any scalar iqwhit produces."""
    if isinstance(value, FracElement) and value.field == RatQ:
        return format_ratq(value)
    if isinstance(value, PolyElement) and value.ring == PolyQ:
        return format_ratq(value)
    if isinstance(value, FracElement):
        return str(value.as_expr())
    if isinstance(value, float):
        return repr(value)
    return str(value)

def to_float(value, qval: float = None) -> float:
    """Numeric value, substituting ``qval`` for a formal ``q`` if needed."""
    if isinstance(value, (PolyElement, FracElement)):
        if qval is None:
            raise ValueError(
                f'A value for q is needed to evaluate {format_scalar(value)}'
            )
        return float(substitute_q(value, float(qval)))
    return float(value)
