"""
Golden examples: the worked polynomials, expansions and limits that every
build must reproduce exactly.
"""

__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import logging
import math
import time

from sympy import QQ

from iqwhit.core.families import expand_skew, one_var
from iqwhit.core.measures import partition_function
from iqwhit.core.partitions import EMPTY, Partition, partitions_up_to, subpartitions
from iqwhit.core.polyspace import (
    Expansion,
    elementary,
    lift,
    monomial,
    poly_ring,
)
from iqwhit.core.scalars import (
    RatQ,
    format_scalar,
    is_natural,
    q,
    qpoch,
    same,
    substitute_q,
)
from iqwhit.core.specializations import F_spec, SpecDesc, littlewood_check
from iqwhit.core.structure import (
    a_expand,
    b_expand,
    hlq_expand,
    pieri_F,
    pieri_power,
    product_F,
    skew_F_expand,
    w_expand_homogeneous,
)
from iqwhit.mixins import UIMixin
from iqwhit.utils import hash_id, logstream, sweep_defaults

from .pool import run_cases
from .verify import (
    DUAL_READINGS,
    VerifyReport,
    _report,
    verify_cauchy_F,
    verify_cauchy_HL,
    verify_dual_cauchy,
    verify_omega_F,
    verify_omega_W,
)

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

def _poly_case(name: str, got, expected, start: float) -> VerifyReport:
    return _report(name, {}, got - expected, start, [str(s) for s in got.ring.symbols])

def _expansion_case(name: str, got: Expansion, expected: Expansion,
                    start: float, params: dict = None) -> VerifyReport:
    millis = (time.perf_counter() - start) * 1000
    params = params or {}
    if got == expected:
        return VerifyReport(name, params, 'exact-pass', millis=millis)
    keys = sorted(set(got.support) | set(expected.support), key=lambda k: (sum(k), k))
    bad = next(k for k in keys if not same(got[k], expected[k]))
    witness = (
        f'{got.basis}[{bad}]: {format_scalar(got[bad])} '
        f'against {format_scalar(expected[bad])}'
    )
    return VerifyReport(name, params, 'fail', witness=witness, millis=millis)

def _scalar_case(name: str, got, expected, start: float, tol: float = None) -> VerifyReport:
    millis = (time.perf_counter() - start) * 1000
    if tol is None:
        if same(got, expected):
            return VerifyReport(name, {}, 'exact-pass', millis=millis)
        return VerifyReport(
            name, {}, 'fail',
            witness=f'{format_scalar(got)} against {format_scalar(expected)}',
            millis=millis,
        )
    residual = abs(float(got) - float(expected))
    status = 'numeric-pass' if residual <= tol else 'fail'
    witness = None if status != 'fail' else f'{got!r} against {expected!r}'
    return VerifyReport(name, {}, status, residual=residual, witness=witness,
                        millis=millis)

# Polynomials.

def _F_one_over_one():
    start = time.perf_counter()
    R = poly_ring(3)
    x1, x2, x3 = R.gens
    expected = (1 - x1) * (1 - x2) * (1 - x3)
    return _poly_case('F_1/1 product form', expand_skew('F', (1,), (1,), 3), expected, start)

def _F_two():
    start = time.perf_counter()
    R = poly_ring(2)
    x1, x2 = R.gens
    expected = (
        x1**2 + x1 * x2 * (1 + q) + x2**2
        - (x1**2 * x2 + x1 * x2**2) * (1 + q)
        + x1**2 * x2**2 * q
    )
    return _poly_case('F_(2,0)', expand_skew('F', (2,), EMPTY, 2), expected, start)

def _F_two_one():
    start = time.perf_counter()
    R = poly_ring(2)
    x1, x2 = R.gens
    expected = x1**2 * x2 + x1 * x2**2 - x1**2 * x2**2
    return _poly_case('F_(2,1)', expand_skew('F', (2, 1), EMPTY, 2), expected, start)

def _Ftilde_two():
    start = time.perf_counter()
    R = poly_ring(2)
    x1, x2 = R.gens
    expected = (
        (x1 - 1) * (x1 - q)
        + (x1 - 1) * (x2 - 1) * (1 + q)
        + (x2 - 1) * (x2 - q)
    )
    got = expand_skew('Ftilde', (2,), EMPTY, 2) * qpoch(q, 2)
    return _poly_case('(q;q)_2 Ftilde_(2,0)', got, expected, start)

def _j_two():
    start = time.perf_counter()
    R = poly_ring(2)
    x1, x2 = R.gens
    expected = (x1 * (x1 + 1) + x1 * x2 * (1 - q) + x2 * (x2 + 1)) * (1 - q)
    return _poly_case('j_(2,0)', expand_skew('j', (2,), EMPTY, 2), expected, start)

def _j_two_hlq():
    start = time.perf_counter()
    expected = Expansion('HLQ', {(2,): 1, (1,): 1})
    return _expansion_case('j_(2,0) = Q_2 + Q_1', hlq_expand((2,), 2), expected, start)

def _one_variable():
    start = time.perf_counter()
    R = poly_ring(1)
    x = R.gens[0]
    checks = [
        (one_var('F', (1,), (1,)).as_poly(R, 0), 1 - x),
        (one_var('Ftilde', (1,), EMPTY).as_poly(R, 0), (x - 1) * (1 / (1 - q))),
    ]
    for k in range(1, 4):
        J = one_var('J', (k,), EMPTY)
        if J.pole != k:
            return VerifyReport(
                'one-variable weights', {'k': k}, 'fail',
                witness=f'J_({k}) has pole order {J.pole}',
            )
        checks.append((J.as_poly(R, 0), x**k * (1 - q)))
        checks.append((one_var('j', (k,), EMPTY).as_poly(R, 0), x * (1 + x)**(k - 1) * (1 - q)))
    for got, expected in checks:
        if got != expected:
            return _poly_case('one-variable weights', got, expected, start)
    return _poly_case('one-variable weights', R.zero, R.zero, start)

# Expansions.

def _F1_squared():
    start = time.perf_counter()
    expected = Expansion('F', {(2,): 1, (1, 1): 1 - q, (2, 1): q - 1})
    reports = [
        _expansion_case('F_1 F_1', product_F((1,), (1,), algorithm=a), expected, start)
        for a in ('dual', 'direct')
    ]
    return next((r for r in reports if not r.passed), reports[0])

def _F1_times_31():
    start = time.perf_counter()
    expected = Expansion('F', {
        (4, 1): 1,
        (3, 2): 1 - q**2,
        (3, 1, 1): 1 - q,
        (4, 2): q**2 - 1,
        (3, 2, 1): -(1 - q) * (1 - q**2),
        (4, 1, 1): q - 1,
        (4, 2, 1): (1 - q) * (1 - q**2),
    })
    report = _expansion_case('F_1 F_(3,1)', pieri_F((3, 1)), expected, start)
    if not report.passed:
        return report
    return _expansion_case('F_1 F_(3,1)', product_F((1,), (3, 1)), expected, start)

def _F_skew_one():
    start = time.perf_counter()
    expected = Expansion('F', {EMPTY: 1, (1,): -1})
    return _expansion_case('F_1/1 = 1 - F_1', skew_F_expand((1,), (1,)), expected, start)

def _W_elementary():
    start = time.perf_counter()
    for n in range(1, 4):
        got = w_expand_homogeneous(elementary(n))
        expected = Expansion('W', {(1,) * n: 1})
        report = _expansion_case(f'e_{n} = W_1^{n}', got, expected, start)
        if not report.passed:
            return report
    return report

def _W_lift():
    start = time.perf_counter()
    f = expand_skew('W', (1, 1), EMPTY, 4)
    got = lift(f, 4)
    millis = (time.perf_counter() - start) * 1000
    status = 'exact-pass' if got == elementary(2, 4) else 'fail'
    witness = None if status == 'exact-pass' else str(got)
    return VerifyReport('lift W_1^2 = e_2', {}, status, witness=witness, millis=millis)

def _omega_round_trip():
    start = time.perf_counter()
    f = monomial((2, 1), 4) + monomial((1, 1, 1), 4) * 3
    got = f.omega('0q').omega('q0')
    millis = (time.perf_counter() - start) * 1000
    status = 'exact-pass' if got == f else 'fail'
    witness = None if status == 'exact-pass' else str(got)
    return VerifyReport('omega_q0 after omega_0q', {}, status, witness=witness, millis=millis)

def _omega_columns():
    for n in range(1, 5):
        report = verify_omega_W((1,) * n)
        if not report.passed:
            return report
    return report

def _a_column():
    start = time.perf_counter()
    expected = Expansion('F', {(1,): 1, (1, 1): 1, (1, 1, 1): 1}, truncation=3)
    return _expansion_case('W_1 = F_1 + F_11 + F_111', a_expand((1,), 3), expected, start)

def _b_column():
    start = time.perf_counter()
    expected = Expansion('W', {(1, 1): 1, (1, 1, 1): -2, (1, 1, 1, 1): 3}, truncation=4)
    return _expansion_case('F_11 = W_11 - 2W_111 + 3W_1111', b_expand((1, 1), 4), expected, start)

def _w1_power_positive():
    start = time.perf_counter()
    for n in range(1, 7):
        for lam, c in pieri_power(n).items():
            if not substitute_q(c, QQ(1, 2)) > 0:
                return VerifyReport(
                    'W_1^n positivity', {'n': n}, 'fail',
                    witness=f'W[{lam}]: {format_scalar(c)}',
                    millis=(time.perf_counter() - start) * 1000,
                )
    return VerifyReport('W_1^n positivity', {'n': 6}, 'exact-pass',
                        millis=(time.perf_counter() - start) * 1000)

# Specializations and measures.

def _dual_column():
    start = time.perf_counter()
    beta = QQ(1, 3)
    spec = SpecDesc(betas=(beta,))
    for n in range(1, 7):
        got = F_spec(spec, (1,) * n)
        expected = (1 - q) * RatQ.one * (beta / (1 + beta))**n
        report = _scalar_case(f'dual substitution on F_1^{n}', got, expected, start)
        if not report.passed:
            return report
    return report

def _alpha_one_over_one():
    start = time.perf_counter()
    alpha = QQ(2, 5)
    got = F_spec(SpecDesc(alphas=(alpha,)), (1,), (1,))
    return _scalar_case('alpha on F_1/1', got, RatQ.one * (1 - alpha), start)

def _plancherel_Fbar():
    start = time.perf_counter()
    gamma = 0.7
    got = F_spec(SpecDesc(gamma=gamma, q=0.5), (1,), family='Fbar', cutoff=40)
    return _scalar_case('Plancherel on Fbar_1', got, math.exp(gamma) - 1, start, tol=1e-8)

def _plancherel_Z():
    start = time.perf_counter()
    gamma, qf = 0.5, 0.5
    got = partition_function(SpecDesc(gamma=gamma, q=qf))
    logger.info(
        f'Printed Plancherel closed form gives {math.exp(gamma * qf / (1 - qf)):.12g}'
    )
    return _scalar_case('Plancherel Z', got, math.exp(gamma / (1 - qf)), start, tol=1e-8)

def _littlewood():
    start = time.perf_counter()
    worst = 0.0
    for values, mu in (((0.3,), EMPTY), ((0.2, 0.1), Partition((1,)))):
        result = littlewood_check(values, mu, cap=30, q=0.5)
        worst = max(worst, result.residual)
        if not result.converged:
            return _scalar_case('Littlewood summation', result.partial, result.kernel,
                                start, tol=1e-6)
    return VerifyReport('Littlewood summation', {}, 'numeric-pass', residual=worst,
                        millis=(time.perf_counter() - start) * 1000)

def _hl_single_variable():
    return verify_cauchy_HL(EMPTY, EMPTY, 1, 1, 5)

# Invariant sweeps over all small shapes.

def _swept(name: str, checks, params: dict, start: float) -> VerifyReport:
    """The first failing report of ``checks``, or one pass for the sweep."""
    count = 0
    for report in checks:
        count += 1
        if not report.passed:
            return report
    logger.debug(f'{name}: {count} checks passed')
    return VerifyReport(name, params, 'exact-pass',
                        millis=(time.perf_counter() - start) * 1000)

def _shapes(size: int) -> list:
    return [lam for lam in partitions_up_to(size) if lam]

def _product_agreement():
    start = time.perf_counter()
    size = sweep_defaults['product']
    shapes = _shapes(size)
    name = 'F_mu F_nu dual = direct'
    checks = (
        _expansion_case(
            name, product_F(mu, nu), product_F(mu, nu, algorithm='direct'), start,
            params={'mu': str(mu), 'nu': str(nu)},
        )
        for i, mu in enumerate(shapes) for nu in shapes[i:]
    )
    return _swept(name, checks, {'size': size}, start)

def _skew_agreement():
    start = time.perf_counter()
    size = sweep_defaults['skew']
    name = 'F_lam/mu dual = direct'
    checks = (
        _expansion_case(
            name, skew_F_expand(lam, mu), skew_F_expand(lam, mu, algorithm='direct'),
            start, params={'lambda': str(lam), 'mu': str(mu)},
        )
        for lam in _shapes(size) for mu in subpartitions(lam)
    )
    return _swept(name, checks, {'size': size}, start)

def _coefficient_signs():
    start = time.perf_counter()
    size = sweep_defaults['basis']
    name = 'a natural, b alternating'

    def checks():
        for lam in _shapes(size):
            D = sum(lam) + 1
            for mu, c in a_expand(lam, D).items():
                if not is_natural(c):
                    yield VerifyReport(
                        name, {'lambda': str(lam), 'D': D}, 'fail',
                        witness=f'a[{mu}]: {format_scalar(c)}',
                    )
            for mu, c in b_expand(lam, D).items():
                if not is_natural(c * (-1)**(sum(mu) - sum(lam))):
                    yield VerifyReport(
                        name, {'lambda': str(lam), 'D': D}, 'fail',
                        witness=f'b[{mu}]: {format_scalar(c)}',
                    )
    return _swept(name, checks(), {'size': size}, start)

def _cauchy_sweep():
    start = time.perf_counter()
    size = sweep_defaults['cauchy']
    shapes = list(partitions_up_to(size))
    checks = []
    for mu in shapes:
        for nu in shapes:
            checks.append(lambda mu=mu, nu=nu: verify_cauchy_F(mu, nu, n=2, m=1, D=3))
            checks.append(lambda mu=mu, nu=nu: verify_cauchy_HL(mu, nu, n=1, m=1, D=3))
            checks.extend(
                lambda mu=mu, nu=nu, r=r: verify_dual_cauchy(mu, nu, n=2, m=1, D=3, reading=r)
                for r in DUAL_READINGS
            )
    return _swept('Cauchy identities', (c() for c in checks), {'size': size}, start)

def _omega_sweep():
    start = time.perf_counter()
    size = sweep_defaults['omega']
    checks = (
        check
        for lam in _shapes(size) for mu in subpartitions(lam)
        for check in (verify_omega_W(lam, mu), verify_omega_F(lam, mu, D=sum(lam)))
    )
    return _swept('omega dualities', checks, {'size': size}, start)

GOLDEN = {
    'F_1/1 product form': _F_one_over_one,
    'F_(2,0)': _F_two,
    'F_(2,1)': _F_two_one,
    '(q;q)_2 Ftilde_(2,0)': _Ftilde_two,
    'j_(2,0)': _j_two,
    'j_(2,0) = Q_2 + Q_1': _j_two_hlq,
    'one-variable weights': _one_variable,
    'F_1 F_1': _F1_squared,
    'F_1 F_(3,1)': _F1_times_31,
    'F_1/1 = 1 - F_1': _F_skew_one,
    'e_n = W_1^n': _W_elementary,
    'lift W_1^2 = e_2': _W_lift,
    'omega_q0 after omega_0q': _omega_round_trip,
    'omega W_1^n = Q_n': _omega_columns,
    'W_1 column': _a_column,
    'F_11 column': _b_column,
    'W_1^n positivity': _w1_power_positive,
    'dual substitution on F_1^n': _dual_column,
    'alpha on F_1/1': _alpha_one_over_one,
    'Plancherel on Fbar_1': _plancherel_Fbar,
    'Plancherel Z': _plancherel_Z,
    'Littlewood summation': _littlewood,
    'single-variable HL Cauchy': _hl_single_variable,
    'F_mu F_nu dual = direct': _product_agreement,
    'F_lam/mu dual = direct': _skew_agreement,
    'a natural, b alternating': _coefficient_signs,
    'Cauchy identities': _cauchy_sweep,
    'omega dualities': _omega_sweep,
}

class GoldenReport(UIMixin):
    """Aggregate of the golden examples, in a fixed order."""

    def __init__(self, reports: dict):
        self._reports = dict(reports)
        failed = [k for k, r in self._reports.items() if not r.passed]
        self._id = f'golden-{hash_id(*self._reports)}'
        self._meta = {
            'cases': len(self._reports),
            'failed': failed,
        }

    def __str__(self):
        return f'<GoldenReport: {self._id} ({self.summary})>'

    def __getitem__(self, name: str) -> VerifyReport:
        if name not in self._reports:
            raise IndexError(f'No golden case named "{name}"')
        return self._reports[name]

    def __iter__(self):
        return iter(self._reports.items())

    def __len__(self):
        return len(self._reports)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self._reports.values())

    @property
    def summary(self) -> str:
        ok = sum(1 for r in self._reports.values() if r.passed)
        return f'{ok}/{len(self._reports)} passed'

    def to_dict(self) -> dict:
        return {
            'passed': self.passed,
            'summary': self.summary,
            'reports': {k: r.to_dict() for k, r in self._reports.items()},
        }

    def help(self):
        """Help method for this class"""
        print('GoldenReport Help:')
        print(' > report[name] - VerifyReport of one case')
        print(' > report.passed - True when every case passes')
        print(' > report.to_dict() - JSON report')
        super().help(additionals=['passed', 'summary'])

def _raised(name: str, err: Exception) -> VerifyReport:
    """A case that raised is a failure with the exception as witness."""
    return VerifyReport(name, {}, 'fail', witness=f'{type(err).__name__}: {err}')

def golden_suite(names: list = None, threads: int = None) -> GoldenReport:
    """
    Run the golden examples (all, or the ``names`` given) through the work
    pool.
    """
    names = list(GOLDEN) if names is None else names
    unknown = [n for n in names if n not in GOLDEN]
    if unknown:
        raise ValueError(f'Unknown golden cases: {unknown}')
    cases = {name: GOLDEN[name] for name in names}
    reports = run_cases(lambda fn: fn(), cases, threads=threads, on_error=_raised)
    report = GoldenReport(reports)
    logger.info(f'Golden suite: {report.summary}')
    return report
