__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import logging
import time

from sympy import Symbol

from iqwhit.core.families import (
    expand_skew,
    lift_family,
    macd_specialize,
)
from iqwhit.core.partitions import (
    EMPTY,
    Partition,
    b_hl,
    b_macdonald,
    conjugate,
    contains,
    partitions_up_to,
    subpartitions,
)
from iqwhit.core.polyspace import (
    embed,
    first_monomial,
    format_monomial,
    pair_ring,
    truncate,
)
from iqwhit.core.scalars import MacdField, RatQ, format_scalar, mq, mt, q, qpoch
from iqwhit.core.specializations import littlewood_check
from iqwhit.mixins import UIMixin
from iqwhit.utils import hash_id, logstream, verify_defaults

from .pool import run_cases

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

STATUSES = ('exact-pass', 'numeric-pass', 'fail')

DUAL_READINGS = ('independent', 'shared')

class VerifyReport(UIMixin):
    """
    Outcome of checking one identity at one set of parameters.
    """

    def __init__(
            self,
            identity: str,
            params: dict,
            status: str,
            residual: float = None,
            witness: str = None,
            millis: float = 0.0,
        ):
        if status not in STATUSES:
            raise ValueError(
                f'Unknown status "{status}" - must be one of {STATUSES}'
            )
        self._identity = identity
        self._params = dict(params)
        self._status = status
        self._residual = residual
        self._witness = witness
        self._millis = millis

        self._id = f'{identity}-{hash_id(identity, sorted(self._params.items()))}'
        self._meta = {
            'identity': identity,
            'params': self._params,
            'status': status,
        }
        if residual is not None:
            self._meta['residual'] = residual
        if witness is not None:
            self._meta['witness'] = witness

    def __str__(self):
        return f'<VerifyReport: {self._id} ({self._identity}: {self._status})>'

    @property
    def identity(self) -> str:
        return self._identity

    @property
    def params(self) -> dict:
        return dict(self._params)

    @property
    def status(self) -> str:
        return self._status

    @property
    def residual(self):
        return self._residual

    @property
    def witness(self):
        return self._witness

    @property
    def millis(self) -> float:
        return self._millis

    @property
    def passed(self) -> bool:
        return self._status != 'fail'

    def to_dict(self) -> dict:
        out = {
            'identity': self._identity,
            'params': {k: _jsonable(v) for k, v in self._params.items()},
            'status': self._status,
        }
        if self._residual is not None:
            out['residual'] = self._residual
        if self._witness is not None:
            out['witness'] = self._witness
        out['millis'] = round(self._millis, 3)
        return out

    def help(self):
        """Help method for this class"""
        print('VerifyReport Help:')
        print(' > report.passed - True for exact or numeric passes')
        print(' > report.to_dict() - JSON report')
        super().help(additionals=['identity', 'params', 'status', 'residual', 'witness'])

def _jsonable(value):
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)) and not isinstance(value, Partition):
        return [_jsonable(v) for v in value]
    return str(value)

def _report(identity: str, params: dict, diff, start: float,
            names: list = None) -> VerifyReport:
    """Exact report from a difference polynomial; the witness is its first monomial."""
    millis = (time.perf_counter() - start) * 1000
    if not diff:
        logger.info(f'{identity} {params}: exact-pass')
        return VerifyReport(identity, params, 'exact-pass', millis=millis)
    exp = first_monomial(diff)
    witness = f'{format_monomial(exp, names)}: {format_scalar(diff[exp])}'
    logger.info(f'{identity} {params}: fail at {witness}')
    return VerifyReport(identity, params, 'fail', witness=witness, millis=millis)

def _names(R) -> list:
    return [str(s) for s in R.symbols]

def _check_truncation(D: int, *shapes):
    for shape in shapes:
        if D < sum(shape):
            raise ValueError(
                f'Truncation degree {D} is below |{shape}| = {sum(shape)}'
            )

def _outer_shapes(mu: Partition, nu: Partition, size: int, length: int,
                  width: int = None):
    """The ``lam`` containing ``mu`` and ``nu`` with the given size and shape bounds."""
    for lam in partitions_up_to(size, max_part=width, max_length=length):
        if contains(lam, mu) and contains(lam, nu):
            yield lam

def _inner_shapes(mu: Partition, nu: Partition):
    """The ``lam`` inside both ``mu`` and ``nu``."""
    for lam in subpartitions(mu):
        if contains(nu, lam):
            yield lam

def _x_positions(n: int):
    return range(n)

def _y_positions(n: int, m: int):
    return range(n, n + m)

def _truncated_product(R, factors: list, D: int, positions) -> object:
    out = R.one
    for f in factors:
        out = truncate(out * f, D, positions)
    return out

# Cauchy identity for the inhomogeneous and interpolation q-Whittaker pair.

def _qwhittaker_kernel(R, n: int, m: int, D: int):
    """
    ``prod (x_i;q)_inf / (x_i y_j;q)_inf`` up to x-degree ``D``, from
    ``sum_k x^k (1/y;q)_k y^k / (q;q)_k``.
    """
    xs, ys = R.gens[:n], R.gens[n:]
    factors = []
    for x in xs:
        for y in ys:
            factor, top = R.zero, R.one
            for k in range(D + 1):
                if k:
                    top = top * (y - q**(k - 1))
                factor = factor + x**k * top * (1 / qpoch(q, k))
            factors.append(factor)
    return _truncated_product(R, factors, D, _x_positions(n))

def verify_cauchy_F(mu=EMPTY, nu=EMPTY, n: int = 2, m: int = 2, D: int = None,
                    weights: dict = None) -> VerifyReport:
    """
    Skew Cauchy identity between ``F`` (in ``x1..xn``) and ``Ftilde`` (in
    ``y1..ym``), compared up to total x-degree ``D``.

    :param weights: (dict) Optional replacements ``family -> fn(lam, mu, k)``
        for the polynomial of a family, used to check that a broken family is
        caught.
    """
    start = time.perf_counter()
    mu, nu = Partition(mu), Partition(nu)
    D = verify_defaults['cauchy-F'] if D is None else D
    _check_truncation(D, mu, nu)
    weights = weights or {}
    F = weights.get('F', lambda a, b, k: expand_skew('F', a, b, k))
    Ft = weights.get('Ftilde', lambda a, b, k: expand_skew('Ftilde', a, b, k))

    R = pair_ring(n, m)
    xpos = _x_positions(n)

    left = R.zero
    length = min(len(mu) + n, len(nu) + m)
    for lam in _outer_shapes(mu, nu, sum(mu) + D, length):
        term = embed(F(lam, mu, n), R) * embed(Ft(lam, nu, m), R, offset=n)
        left = left + truncate(term, D, xpos)

    inner = R.zero
    for lam in _inner_shapes(mu, nu):
        inner = inner + embed(Ft(mu, lam, m), R, offset=n) * embed(F(nu, lam, n), R)
    right = truncate(_qwhittaker_kernel(R, n, m, D) * inner, D, xpos)

    params = {'mu': str(mu), 'nu': str(nu), 'n': n, 'm': m, 'D': D, 'q': 'formal'}
    return _report('cauchy-F', params, left - right, start, _names(R))

# Cauchy identity for the inhomogeneous Hall-Littlewood pair.

def _hl_kernel(R, n: int, m: int, D: int):
    """``prod (1 - q x_i y_j)/(1 - x_i y_j)`` up to y-degree ``D``."""
    xs, ys = R.gens[:n], R.gens[n:]
    factors = []
    for x in xs:
        for y in ys:
            factor = R.one
            for k in range(1, D + 1):
                factor = factor + (x * y)**k * (1 - q)
            factors.append(factor)
    return _truncated_product(R, factors, D, _y_positions(n, m))

def _J_series(lam: Partition, mu: Partition, m: int, D: int, R, offset: int):
    value = expand_skew('J', lam, mu, m)
    if not value:
        return R.zero
    return embed(value.series(D, total=True), R, offset=offset)

def verify_cauchy_HL(mu=EMPTY, nu=EMPTY, n: int = 1, m: int = 1,
                     D: int = None) -> VerifyReport:
    """
    Cauchy identity between ``j`` (in ``x1..xn``) and the dual rational family
    ``J`` (in ``y1..ym``, expanded as power series), compared up to total
    y-degree ``D``. ``t`` is the formal ``q``.
    """
    start = time.perf_counter()
    mu, nu = Partition(mu), Partition(nu)
    D = verify_defaults['cauchy-HL'] if D is None else D
    _check_truncation(D, mu, nu)

    R = pair_ring(n, m)
    ypos = _y_positions(n, m)

    left = R.zero
    length = min(len(mu) + n, len(nu) + m)
    for lam in _outer_shapes(mu, nu, sum(nu) + D, length):
        j = expand_skew('j', lam, mu, n)
        if not j:
            continue
        J = _J_series(lam, nu, m, D, R, n)
        term = embed(j, R) * J * (b_hl(mu) / b_hl(lam))
        left = left + truncate(term, D, ypos)

    inner = R.zero
    for lam in _inner_shapes(mu, nu):
        j = expand_skew('j', nu, lam, n)
        if not j:
            continue
        J = _J_series(mu, lam, m, D, R, n)
        inner = inner + embed(j, R) * J * (b_hl(lam) / b_hl(nu))
    right = truncate(_hl_kernel(R, n, m, D) * inner, D, ypos)

    params = {'mu': str(mu), 'nu': str(nu), 'n': n, 'm': m, 'D': D, 'q': 'formal'}
    return _report('cauchy-HL', params, left - right, start, _names(R))

# Dual Cauchy identity between j and F on conjugate shapes.

def verify_dual_cauchy(mu=EMPTY, nu=EMPTY, n: int = 2, m: int = 2, D: int = None,
                       reading: str = 'independent') -> VerifyReport:
    """
    ``sum b_mu/b_lam j_{lam/mu}(y) F_{lam'/nu'}(x) = prod (1 + x_i y_j)
    sum b_lam/b_nu j_{nu/lam}(y) F_{mu'/lam'}(x)``, up to total x-degree ``D``.

    :param reading: (str) ``independent`` puts ``j`` in ``m`` variables;
        ``shared`` uses ``n`` variables on both sides.
    """
    start = time.perf_counter()
    if reading not in DUAL_READINGS:
        raise ValueError(
            f'Unknown reading "{reading}" - must be one of {DUAL_READINGS}'
        )
    mu, nu = Partition(mu), Partition(nu)
    D = verify_defaults['dual-cauchy'] if D is None else D
    _check_truncation(D, mu, nu)
    if reading == 'shared':
        m = n

    R = pair_ring(n, m)
    xpos = _x_positions(n)

    left = R.zero
    for lam in _outer_shapes(mu, nu, sum(nu) + D, len(mu) + m, nu.part(1) + n):
        j = expand_skew('j', lam, mu, m)
        if not j:
            continue
        F = expand_skew('F', conjugate(lam), conjugate(nu), n)
        term = embed(j, R, offset=n) * embed(F, R) * (b_hl(mu) / b_hl(lam))
        left = left + truncate(term, D, xpos)

    inner = R.zero
    for lam in _inner_shapes(mu, nu):
        j = expand_skew('j', nu, lam, m)
        if not j:
            continue
        F = expand_skew('F', conjugate(mu), conjugate(lam), n)
        inner = inner + embed(j, R, offset=n) * embed(F, R) * (b_hl(lam) / b_hl(nu))

    xs, ys = R.gens[:n], R.gens[n:]
    kernel = R.one
    for x in xs:
        for y in ys:
            kernel = kernel * (1 + x * y)
    right = truncate(kernel * inner, D, xpos)

    params = {
        'mu': str(mu), 'nu': str(nu), 'n': n, 'm': m, 'D': D,
        'reading': reading, 'q': 'formal',
    }
    return _report('dual-cauchy', params, left - right, start, _names(R))

def dual_cauchy_readings(mu=EMPTY, nu=EMPTY, n: int = 2, m: int = 2,
                         D: int = None) -> dict:
    """
    Run both variable-count readings of the dual Cauchy identity and log the
    ones that hold.
    """
    reports = {
        r: verify_dual_cauchy(mu, nu, n, m, D, reading=r)
        for r in DUAL_READINGS
    }
    holding = [r for r, rep in reports.items() if rep.passed]
    logger.info(f'Dual Cauchy readings holding: {holding or "none"}')
    return reports

# omega duality.

def _symfunc_report(identity: str, params: dict, left, right, start):
    diff = left - right
    millis = (time.perf_counter() - start) * 1000
    if not diff:
        return VerifyReport(identity, params, 'exact-pass', millis=millis)
    kappa = diff.support[0]
    witness = f'm[{kappa}]: {format_scalar(diff[kappa])}'
    return VerifyReport(identity, params, 'fail', witness=witness, millis=millis)

def verify_omega_F(lam, mu=EMPTY, D: int = None) -> VerifyReport:
    """
    ``omega_{q,0}(F_{lam/mu}) = J_{lam'/mu'}`` up to degree ``D``.
    """
    start = time.perf_counter()
    lam, mu = Partition(lam), Partition(mu)
    D = verify_defaults['omega-F'] if D is None else D
    _check_truncation(D, lam)

    left = lift_family('F', lam, mu, D).omega('q0')
    right = lift_family('J', conjugate(lam), conjugate(mu), D)
    params = {'lambda': str(lam), 'mu': str(mu), 'D': D, 'mode': 'q0'}
    return _symfunc_report('omega-F', params, left, right, start)

def verify_omega_W(lam, mu=EMPTY) -> VerifyReport:
    """
    Lowest layer of the omega duality: ``omega_{q,0}(W_{lam/mu}) = Q_{lam'/mu'}``.
    """
    start = time.perf_counter()
    lam, mu = Partition(lam), Partition(mu)
    D = max(sum(lam) - sum(mu), 0)
    left = lift_family('W', lam, mu, D).omega('q0')
    right = lift_family('HLQ', conjugate(lam), conjugate(mu), D)
    params = {'lambda': str(lam), 'mu': str(mu), 'D': D, 'mode': 'q0'}
    return _symfunc_report('omega-W', params, left, right, start)

# Two-parameter Macdonald Cauchy identity.

MACD_COLLAPSES = (None, 't=q', 't=0')

def _macd_kernel(R, n: int, m: int, D: int, tv, qv):
    """``prod (t x_i y_j; q)_inf / (x_i y_j; q)_inf`` up to x-degree ``D``."""
    xs, ys = R.gens[:n], R.gens[n:]
    factors = []
    for x in xs:
        for y in ys:
            factor = R.zero
            for k in range(D + 1):
                c = qpoch(tv, k, qv) / qpoch(qv, k, qv) if k else 1
                factor = factor + (x * y)**k * c
            factors.append(factor)
    return _truncated_product(R, factors, D, _x_positions(n))

def _specialize_poly(f, R, t_value):
    return R.from_dict({
        e: macd_specialize(c, t_value=t_value) for e, c in f.items()
    })

def verify_macd_cauchy(D: int = None, n: int = 2, m: int = 2,
                       collapse: str = None) -> VerifyReport:
    """
    ``sum P_lam(x;q,t) Q_lam(y;q,t) = prod (t x_i y_j;q)_inf / (x_i y_j;q)_inf``
    in ``QQ(q,t)`` up to degree ``D``.

    :param collapse:    (str) ``t=q`` also checks that both sides reduce to the
        Schur kernel ``prod 1/(1 - x_i y_j)``; ``t=0`` checks them against the
        q-Whittaker kernel ``sum b_lam(q,0) W_lam(x) W_lam(y)``.
    """
    start = time.perf_counter()
    D = verify_defaults['macd-cauchy'] if D is None else D
    if collapse not in MACD_COLLAPSES:
        raise ValueError(
            f'Unknown collapse "{collapse}" - must be one of {MACD_COLLAPSES}'
        )
    if D > 5:
        logger.warning(f'Two-parameter Cauchy check at D={D} may be slow')

    R = pair_ring(n, m, MacdField)
    xpos = _x_positions(n)
    left = R.zero
    for lam in partitions_up_to(D, max_length=min(n, m)):
        P = expand_skew('MacdP', lam, EMPTY, n)
        Q = expand_skew('MacdQ', lam, EMPTY, m)
        left = left + embed(P, R) * embed(Q, R, offset=n)
    left = truncate(left, D, xpos)
    right = _macd_kernel(R, n, m, D, mt, mq)

    params = {'n': n, 'm': m, 'D': D, 'collapse': collapse or 'none'}
    report = _report('macd-cauchy', params, left - right, start, _names(R))
    if collapse is None or not report.passed:
        return report

    S = pair_ring(n, m)
    t_value = Symbol('q') if collapse == 't=q' else 0
    left_c = _specialize_poly(left, S, t_value)
    if collapse == 't=q':
        reference = _truncated_product(S, [
            sum(((x * y)**k for k in range(1, D + 1)), S.one)
            for x in S.gens[:n] for y in S.gens[n:]
        ], D, xpos)
    else:
        reference = S.zero
        for lam in partitions_up_to(D, max_length=min(n, m)):
            b0 = macd_specialize(b_macdonald(lam), t_value=0)
            W_x = embed(expand_skew('W', lam, EMPTY, n), S)
            W_y = embed(expand_skew('W', lam, EMPTY, m), S, offset=n)
            reference = reference + W_x * W_y * b0
        reference = truncate(reference, D, xpos)
        kernel0 = _macd_kernel(S, n, m, D, RatQ.zero, q)
        if kernel0 != reference:
            return _report('macd-cauchy', params, reference - kernel0, start, _names(S))
    return _report('macd-cauchy', params, left_c - reference, start, _names(S))

# Numeric Littlewood summation.

def verify_littlewood(values, mu=EMPTY, cap: int = 30, q_value: float = 0.5,
                      tol: float = None) -> VerifyReport:
    """
    ``sum (b_mu'/b_lam') F_{lam/mu}(x) = prod 1/(x_i;q)_inf`` with the sum cut
    at ``|lam| <= cap``.
    """
    start = time.perf_counter()
    result = littlewood_check(values, mu, cap=cap, q=q_value, tol=tol)
    params = {
        'x': [float(v) for v in values], 'mu': str(Partition(mu)),
        'cap': cap, 'q': q_value,
    }
    millis = (time.perf_counter() - start) * 1000
    if result.converged:
        return VerifyReport('littlewood', params, 'numeric-pass',
                            residual=result.residual, millis=millis)
    return VerifyReport(
        'littlewood', params, 'fail', residual=result.residual,
        witness=f'partial {result.partial!r} against kernel {result.kernel!r}',
        millis=millis,
    )

VERIFIERS = {
    'cauchy-F': verify_cauchy_F,
    'cauchy-HL': verify_cauchy_HL,
    'dual-cauchy': verify_dual_cauchy,
    'omega-F': verify_omega_F,
    'omega-W': verify_omega_W,
    'macd-cauchy': verify_macd_cauchy,
    'littlewood': verify_littlewood,
}

def verify(identity: str, **params) -> VerifyReport:
    """Run one named verifier."""
    if identity not in VERIFIERS:
        raise ValueError(
            f'Unknown identity "{identity}" - must be one of {tuple(VERIFIERS)}'
        )
    return VERIFIERS[identity](**params)

def verify_refinement(identity: str, D: int, **params) -> VerifyReport:
    """
    Run a verifier at ``D`` and ``D+1``; a pass at ``D`` followed by a failure
    at ``D+1`` means the truncation was too small to see the mismatch.
    """
    low = verify(identity, D=D, **params)
    high = verify(identity, D=D + 1, **params)
    if low.passed and not high.passed:
        logger.warning(
            f'{identity} passes at D={D} but fails at D={D + 1}: {high.witness}'
        )
    return high if not high.passed else low

def verify_many(identity: str, cases: dict, threads: int = None) -> dict:
    """
    Run a verifier over ``cases`` (key to keyword arguments) in the work pool;
    reports come back in key order.
    """
    return run_cases(lambda kw: verify(identity, **kw), cases, threads=threads)
