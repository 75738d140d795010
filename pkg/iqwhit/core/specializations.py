"""
Positive specializations.

A specialization is described by finitely many ``alphas`` (variable
substitutions), ``betas`` (dual substitutions) and a Plancherel parameter
``gamma``. On the ring of symmetric functions it is fixed by its power-sum
values; on the inhomogeneous basis it is evaluated by folding one generator
at a time over intermediate partitions.
"""

__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import QQ

from iqwhit.utils import logstream, numeric_defaults

from .families import one_var
from .partitions import (
    EMPTY,
    Partition,
    b_hl,
    conjugate,
    contains,
    strip_successors,
    vertical_successors,
)
from .polyspace import SymFuncTrunc
from .scalars import RatQ, q, qpoch_infinite, substitute_q, to_float

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

def _is_float(value) -> bool:
    return isinstance(value, float)

def _exact(value):
    if isinstance(value, int):
        return QQ(value)
    return value

@dataclass(frozen=True)
class SpecDesc:
    """
    Parameters ``(alphas, betas, gamma)`` of a specialization with the value
    of ``q`` (None keeps ``q`` formal).
    """
    alphas: tuple = ()
    betas: tuple = ()
    gamma: object = 0
    q: object = None

    def __post_init__(self):
        object.__setattr__(self, 'alphas', tuple(_exact(a) for a in self.alphas))
        object.__setattr__(self, 'betas', tuple(_exact(b) for b in self.betas))
        object.__setattr__(self, 'gamma', _exact(self.gamma))
        self.validate()

    def __str__(self):
        return (
            f'<SpecDesc: alphas={[str(a) for a in self.alphas]}, '
            f'betas={[str(b) for b in self.betas]}, gamma={self.gamma}, q={self.q}>'
        )

    def validate(self):
        """Check the parameters lie in the admissible region."""
        for name, seq in (('alphas', self.alphas), ('betas', self.betas)):
            if any(a < 0 for a in seq):
                raise ValueError(f'{name} must be nonnegative, got {list(map(str, seq))}')
            if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
                raise ValueError(f'{name} must be weakly decreasing')
        if self.alphas and self.alphas[0] > 1:
            raise ValueError(f'alphas must lie in [0,1], got {self.alphas[0]}')
        if self.gamma < 0:
            raise ValueError(f'gamma must be nonnegative, got {self.gamma}')
        if self.q is not None and not (0 < self.q < 1):
            raise ValueError(f'q must lie in (0,1), got {self.q}')
        if self.degenerate:
            logger.warning(
                'alpha_1 = 1 gives a degenerate specialization; measures '
                'are not defined for it'
            )

    @property
    def degenerate(self) -> bool:
        return bool(self.alphas) and self.alphas[0] == 1

    @property
    def numeric(self) -> bool:
        """True when some parameter is a float."""
        values = self.alphas + self.betas + (self.gamma, self.q)
        return any(_is_float(v) for v in values)

    @property
    def float_values(self) -> bool:
        """True when values on the inhomogeneous basis are computed in floats."""
        return self.numeric or bool(self.gamma)

    @property
    def qfloat(self) -> float:
        if self.q is None:
            raise ValueError('This computation needs a numeric value for q')
        return float(self.q)

    def generators(self) -> list:
        """One ``(kind, value)`` pair per nonzero generator."""
        gens = [('alpha', a) for a in self.alphas if a]
        gens += [('beta', b) for b in self.betas if b]
        if self.gamma:
            gens.append(('gamma', self.gamma))
        return gens

    def rescaled(self, t) -> 'SpecDesc':
        """The specialization with every parameter multiplied by ``t``."""
        return SpecDesc(
            tuple(a * t for a in self.alphas),
            tuple(b * t for b in self.betas),
            self.gamma * t,
            self.q,
        )

    def to_dict(self) -> dict:
        return {
            'alphas': [str(a) for a in self.alphas],
            'betas': [str(b) for b in self.betas],
            'gamma': str(self.gamma),
            'q': None if self.q is None else str(self.q),
        }

@dataclass
class SeriesValue:
    """Partial sum of a series with its tail estimate."""
    value: object
    tail: float = 0.0
    converged: bool = True
    terms: int = 0
    meta: dict = field(default_factory=dict)

def _q_value(spec: SpecDesc):
    if spec.numeric:
        return spec.qfloat
    return q if spec.q is None else spec.q

def _params(spec: SpecDesc) -> tuple:
    """alphas, betas and gamma, as floats when the spec is numeric."""
    if not spec.numeric:
        return spec.alphas, spec.betas, spec.gamma
    return (
        [float(a) for a in spec.alphas],
        [float(b) for b in spec.betas],
        float(spec.gamma),
    )

def phi_on_p(spec: SpecDesc, n: int):
    """
    ``phi(p_n) = sum alpha^n + (-1)^(n-1) (1-q^n) sum beta^n + gamma [n=1]``.
    """
    if n < 1:
        raise ValueError(f'phi_on_p needs n >= 1, got {n}')
    alphas, betas, gamma = _params(spec)
    value = sum((a**n for a in alphas), 0.0 if spec.numeric else QQ(0))
    if betas:
        qv = _q_value(spec)
        value = value + (-1)**(n - 1) * (1 - qv**n) * sum(b**n for b in betas)
    if n == 1:
        value = value + gamma
    return float(value) if spec.numeric else value

def _coefficient(value, spec: SpecDesc):
    if spec.numeric:
        return to_float(value, spec.qfloat)
    if spec.q is not None:
        return substitute_q(value, spec.q)
    return value

def phi_on_symfunc(spec: SpecDesc, f: SymFuncTrunc):
    """Value of a truncated symmetric function, through its power sums."""
    p = f.to_basis('p')
    total = 0.0 if spec.numeric else (QQ(0) if spec.q is not None else RatQ.zero)
    cache = {}
    for rho, c in p.items():
        term = _coefficient(c, spec)
        for n in rho:
            if n not in cache:
                cache[n] = phi_on_p(spec, n)
            term = term * cache[n]
        total = total + term
    return total

def _truncated_product(series: list, N: int) -> list:
    out = [series[0][k] if k < len(series[0]) else 0 for k in range(N + 1)]
    for s in series[1:]:
        nxt = []
        for n in range(N + 1):
            acc = 0
            for k in range(n + 1):
                if k < len(s):
                    acc = acc + out[n - k] * s[k]
            nxt.append(acc)
        out = nxt
    return out

def _exp_series(x, N: int, numeric: bool) -> list:
    out, term = [], (1.0 if numeric else QQ(1))
    for k in range(N + 1):
        out.append(term)
        term = term * x / (k + 1)
    return out

def w_generating_series(spec: SpecDesc, N: int) -> list:
    """
    ``phi(e_n)`` for ``n = 1..N``, the coefficients of
    ``e^(gamma z) prod (1 + alpha z) prod (1 - q beta z)/(1 - beta z)``.
    """
    if N < 1:
        raise ValueError(f'w_generating_series needs N >= 1, got {N}')
    numeric = spec.numeric
    alphas, betas, gamma = _params(spec)
    one = 1.0 if numeric else QQ(1)
    series = [_exp_series(gamma, N, numeric)]
    for a in alphas:
        series.append([one, a])
    for b in betas:
        qv = _q_value(spec)
        series.append([one] + [(1 - qv) * b**k for k in range(1, N + 1)])
    return _truncated_product(series, N)[1:]

def row_generating_series(spec: SpecDesc, N: int) -> list:
    """
    Coefficients ``n = 1..N`` of
    ``e^(gamma z/(1-q)) prod (1 + beta z) prod 1/(alpha z; q)_infinity``.
    """
    if N < 1:
        raise ValueError(f'row_generating_series needs N >= 1, got {N}')
    numeric = spec.numeric
    alphas, betas, gamma = _params(spec)
    qv = _q_value(spec)
    one = 1.0 if numeric else QQ(1)
    series = [_exp_series(gamma / (1 - qv), N, numeric)]
    for b in betas:
        series.append([one, b])
    for a in alphas:
        coeffs, poch = [], one
        for k in range(N + 1):
            if k:
                poch = poch * (1 - qv**k)
            coeffs.append(a**k / poch)
        series.append(coeffs)
    return _truncated_product(series, N)[1:]

# Plancherel engine: exp(gamma T) with T the one-box linear coefficient.

@lru_cache(maxsize=None)
def _t_column(nu: Partition, qf: float, cap, ceiling) -> tuple:
    column = [(nu, to_float(one_var('F', nu, nu).coefficient(1), qf))]
    for rho in strip_successors(nu, max_increment=1, cap=cap, ceiling=ceiling):
        if rho == nu:
            continue
        c = to_float(one_var('F', rho, nu).coefficient(1), qf)
        if c:
            column.append((rho, c))
    return tuple(column)

def plancherel_apply(
        state: dict,
        gamma: float,
        qf: float,
        cap: int = None,
        ceiling: Partition = None,
        cutoff: int = None,
        strict: bool = False,
    ) -> SeriesValue:
    """
    Apply ``exp(gamma T)`` to a vector over partitions by its Taylor series.
    The result is flagged as not converged when the last term ratio exceeds
    one.
    """
    if cap is None and ceiling is None:
        raise ValueError('The Plancherel series needs a size cap or a ceiling')
    cutoff = cutoff or numeric_defaults['plancherel_cutoff']
    ceiling = None if ceiling is None else Partition(ceiling)

    total = {k: float(v) for k, v in state.items()}
    term = dict(total)
    norms = [sum(abs(v) for v in term.values())]
    for m in range(1, cutoff + 1):
        nxt = {}
        for nu, v in term.items():
            for rho, c in _t_column(nu, qf, cap, ceiling):
                nxt[rho] = nxt.get(rho, 0.0) + c * v * gamma / m
        term = nxt
        for k, v in term.items():
            total[k] = total.get(k, 0.0) + v
        norms.append(sum(abs(v) for v in term.values()))

    ratio = norms[-1] / norms[-2] if norms[-2] else 0.0
    converged = ratio <= 1
    tail = norms[-1] * ratio / (1 - ratio) if ratio < 1 else math.inf
    if not converged:
        msg = (
            f'Plancherel series not converged after {cutoff} terms '
            f'(last term ratio {ratio:.3g})'
        )
        if strict:
            raise ValueError(msg)
        logger.warning(msg)
    return SeriesValue(total, tail=tail, converged=converged, terms=cutoff)

def plancherel_transition(mu, gamma: float, qf: float, **kwargs) -> SeriesValue:
    """Row ``mu`` of ``exp(gamma T)``: Plancherel values of ``F_{lam/mu}``."""
    return plancherel_apply({Partition(mu): 1.0}, float(gamma), float(qf), **kwargs)

# Folding generators over intermediate partitions.

def _weight_value(weight, value, spec: SpecDesc):
    if spec.float_values:
        return weight(float(value), spec.qfloat)
    result = weight(value)
    if spec.q is not None:
        return substitute_q(result, spec.q)
    return result

def _fold_step(state, kind, value, spec, cap, ceiling, cutoff, strict):
    if kind == 'gamma':
        return plancherel_apply(
            state, float(value), spec.qfloat, cap=cap, ceiling=ceiling,
            cutoff=cutoff, strict=strict,
        ).value

    nxt = {}
    for nu, acc in state.items():
        if kind == 'alpha':
            successors = strip_successors(nu, cap=cap, ceiling=ceiling)
        else:
            successors = vertical_successors(nu, cap=cap, ceiling=ceiling)
        for rho in successors:
            if kind == 'alpha':
                weight = one_var('F', rho, nu)
            else:
                weight = one_var('J', conjugate(rho), conjugate(nu))
            if not weight:
                continue
            w = _weight_value(weight, value, spec)
            if w:
                nxt[rho] = nxt.get(rho, 0) + acc * w
    return nxt

def _one(spec: SpecDesc):
    if spec.float_values:
        return 1.0
    return QQ(1) if spec.q is not None else RatQ.one

def fold(
        spec: SpecDesc,
        mu=EMPTY,
        cap: int = None,
        ceiling=None,
        cutoff: int = None,
        strict: bool = False,
    ) -> dict:
    """
    Values ``phi(F_{lam/mu})`` for every ``lam`` within ``cap`` or inside
    ``ceiling``, applying one generator at a time.
    """
    mu = Partition(mu)
    ceiling = None if ceiling is None else Partition(ceiling)
    if cap is None and ceiling is None:
        raise ValueError('fold needs a size cap or a ceiling partition')
    state = {mu: _one(spec)}
    for kind, value in spec.generators():
        state = _fold_step(state, kind, value, spec, cap, ceiling, cutoff, strict)
    return state

def F_spec(spec: SpecDesc, lam, mu=EMPTY, family: str = 'F', cutoff: int = None,
           strict: bool = False):
    """
    Value of a single-generator specialization on ``F_{lam/mu}`` (or the
    sign-flipped ``Fbar``).
    """
    lam, mu = Partition(lam), Partition(mu)
    gens = spec.generators()
    if len(gens) != 1:
        raise ValueError(
            f'F_spec needs exactly one active generator, got {len(gens)}'
        )
    if family not in ('F', 'Fbar'):
        raise ValueError(f'F_spec evaluates F or Fbar, not "{family}"')
    kind, value = gens[0]
    if not contains(lam, mu):
        return _one(spec) * 0

    if kind == 'alpha':
        return _weight_value(one_var(family, lam, mu), value, spec)
    if kind == 'beta':
        if family != 'F':
            raise NotImplementedError('Dual substitution is only defined here for F')
        return _weight_value(
            one_var('J', conjugate(lam), conjugate(mu)), value, spec
        )

    sign = 1.0 if family == 'F' else -1.0
    result = plancherel_transition(
        mu, sign * float(value), spec.qfloat, ceiling=lam,
        cutoff=cutoff, strict=strict,
    )
    found = result.value.get(lam, 0.0)
    if family == 'Fbar':
        found *= (-1)**(sum(lam) - sum(mu))
    return found

def F_spec_union(spec: SpecDesc, lam, mu=EMPTY, cutoff: int = None,
                 strict: bool = False):
    """Value of the full specialization on ``F_{lam/mu}``."""
    lam, mu = Partition(lam), Partition(mu)
    if not contains(lam, mu):
        return _one(spec) * 0
    state = fold(spec, mu, ceiling=lam, cutoff=cutoff, strict=strict)
    return state.get(lam, _one(spec) * 0)

def phi_sequence(spec: SpecDesc, N: int) -> list:
    """``phi_n = phi(F_{1^n})`` for ``n = 1..N``."""
    if N < 1:
        raise ValueError(f'phi_sequence needs N >= 1, got {N}')
    return [F_spec_union(spec, Partition((1,) * n)) for n in range(1, N + 1)]

def w_from_phi(phis: list, n: int, K: int = None, tol: float = 1e-8) -> SeriesValue:
    """
    ``phi(W_{1^n}) = sum_k C(n+k-1, k) phi_{n+k}``, truncated after ``K``
    terms. ``phis[0]`` is ``phi_1``.
    """
    if n < 1:
        raise ValueError(f'w_from_phi needs n >= 1, got {n}')
    available = len(phis) - n + 1
    K = available if K is None else K
    if K < 1 or K > available:
        raise ValueError(
            f'w_from_phi needs 1 <= K <= {available} with {len(phis)} values'
        )
    total, last = 0, 0
    for k in range(K):
        last = math.comb(n + k - 1, k) * phis[n + k - 1]
        total = total + last
    tail = abs(float(last))
    converged = tail <= tol
    if not converged:
        logger.info(f'w_from_phi: last term {tail:.3g} exceeds {tol:.3g}')
    return SeriesValue(total, tail=tail, converged=converged, terms=K)

@dataclass
class LittlewoodResult:
    partial: float
    kernel: float
    residual: float
    converged: bool
    cap: int

def littlewood_check(values, mu=EMPTY, cap: int = 30, q: float = 0.5,
                     tol: float = None) -> LittlewoodResult:
    """
    Compare ``sum_lam (b_mu'/b_lam') F_{lam/mu}(x)`` over ``|lam| <= cap`` with
    ``prod 1/(x_i; q)_infinity``.
    """
    tol = numeric_defaults['littlewood_tol'] if tol is None else tol
    values = [float(v) for v in values]
    if any(abs(v) >= 1 for v in values):
        raise ValueError(f'Littlewood summation needs |x_i| < 1, got {values}')
    if not (0 < q < 1):
        raise ValueError(f'q must lie in (0,1), got {q}')
    mu = Partition(mu)
    qf = float(q)

    state = {mu: 1.0}
    for x in values:
        nxt = {}
        for nu, acc in state.items():
            for rho in strip_successors(nu, cap=cap):
                w = one_var('F', rho, nu)(x, qf)
                if w:
                    nxt[rho] = nxt.get(rho, 0.0) + acc * w
        state = nxt

    b_mu = b_hl(conjugate(mu), qf)
    partial = sum(b_mu / b_hl(conjugate(lam), qf) * v for lam, v in state.items())
    kernel = 1.0
    for x in values:
        kernel /= qpoch_infinite(x, qf)
    residual = abs(partial - kernel)
    converged = residual <= tol
    if not converged:
        logger.warning(
            f'Littlewood partial sum at cap {cap} misses the kernel by {residual:.3g}'
        )
    return LittlewoodResult(partial, kernel, residual, converged, cap)
