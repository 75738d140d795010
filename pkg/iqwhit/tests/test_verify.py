import pytest

from iqwhit.core.families import expand_skew
from iqwhit.core.partitions import EMPTY, partitions_up_to, subpartitions
from iqwhit.engine.verify import (
    VerifyReport,
    dual_cauchy_readings,
    verify,
    verify_cauchy_F,
    verify_cauchy_HL,
    verify_dual_cauchy,
    verify_littlewood,
    verify_macd_cauchy,
    verify_many,
    verify_omega_F,
    verify_omega_W,
    verify_refinement,
)

class TestVerifyReport:
    def test_main(self):
        report = VerifyReport('cauchy-F', {'D': 3}, 'exact-pass', millis=1.23456)
        assert report.passed
        assert report.to_dict() == {
            'identity': 'cauchy-F',
            'params': {'D': 3},
            'status': 'exact-pass',
            'millis': 1.235,
        }

    def test_bad_status(self):
        with pytest.raises(ValueError):
            VerifyReport('cauchy-F', {}, 'maybe')

def test_cauchy_F():
    report = verify('cauchy-F', mu=EMPTY, nu=EMPTY, n=2, m=1, D=3)
    assert report.status == 'exact-pass'
    assert report.witness is None

    with pytest.raises(ValueError):
        verify_cauchy_F((2, 1), EMPTY, D=2)

def test_cauchy_F_catches_a_broken_family():
    broken = {'F': lambda lam, mu, n: expand_skew('W', lam, mu, n)}
    report = verify_cauchy_F(EMPTY, EMPTY, n=2, m=1, D=2, weights=broken)
    assert report.status == 'fail'
    assert report.witness is not None
    assert not report.passed

def test_dual_cauchy():
    assert verify_dual_cauchy(EMPTY, EMPTY, n=1, m=1, D=3).passed

    reports = dual_cauchy_readings(EMPTY, EMPTY, n=1, m=1, D=3)
    assert set(reports) == {'independent', 'shared'}

    with pytest.raises(ValueError):
        verify_dual_cauchy(reading='both')

def test_cauchy_HL():
    assert verify_cauchy_HL(EMPTY, (1,), n=1, m=1, D=3).status == 'exact-pass'

def test_omega_W():
    assert verify_omega_W((1, 1)).status == 'exact-pass'

def test_omega_F():
    assert verify_omega_F((1,), (1,), D=3).status == 'exact-pass'
    assert verify_omega_F((2, 1), D=3).status == 'exact-pass'

    with pytest.raises(ValueError):
        verify_omega_F((2, 1), D=2)

def test_macd_cauchy():
    assert verify_macd_cauchy(D=2).status == 'exact-pass'
    assert verify_macd_cauchy(D=2, collapse='t=q').passed

    with pytest.raises(ValueError):
        verify_macd_cauchy(D=2, collapse='t=1')

def test_littlewood():
    report = verify_littlewood([0.3], cap=40)
    assert report.status == 'numeric-pass'
    assert report.residual < 1e-6

def test_dispatch():
    with pytest.raises(ValueError):
        verify('not-an-identity')

    report = verify_refinement('dual-cauchy', 2, mu=EMPTY, nu=EMPTY, n=1, m=1)
    assert report.passed

    cases = {
        'small': {'mu': EMPTY, 'nu': EMPTY, 'n': 1, 'm': 1, 'D': 2},
        'one': {'mu': (1,), 'nu': EMPTY, 'n': 1, 'm': 1, 'D': 2},
    }
    reports = verify_many('dual-cauchy', cases, threads=2)
    assert list(reports) == ['small', 'one']
    assert all(isinstance(r, VerifyReport) for r in reports.values())


TINY = list(partitions_up_to(1))
OMEGA_CASES = [
    (lam, mu)
    for lam in partitions_up_to(4) if lam
    for mu in subpartitions(lam)
]

@pytest.mark.parametrize('mu,nu', [(mu, nu) for mu in TINY for nu in TINY], ids=str)
def test_cauchy_F_sweep(mu, nu):
    assert verify_cauchy_F(mu, nu, n=2, m=1, D=3).status == 'exact-pass'
    assert verify_cauchy_F(mu, nu, n=1, m=2, D=3).status == 'exact-pass'

@pytest.mark.parametrize('D', [2, 3, 4])
def test_cauchy_F_degrees(D):
    assert verify_cauchy_F(EMPTY, EMPTY, n=1, m=1, D=D).status == 'exact-pass'

@pytest.mark.parametrize('mu,nu', [(mu, nu) for mu in TINY for nu in TINY]
                         + [((2,), EMPTY), ((1, 1), (1,))], ids=str)
def test_cauchy_HL_sweep(mu, nu):
    assert verify_cauchy_HL(mu, nu, n=1, m=1, D=3).status == 'exact-pass'

def test_cauchy_HL_two_variables():
    assert verify_cauchy_HL(EMPTY, EMPTY, n=2, m=1, D=3).status == 'exact-pass'

@pytest.mark.parametrize('mu,nu', [(mu, nu) for mu in TINY for nu in TINY], ids=str)
@pytest.mark.parametrize('reading', ['independent', 'shared'])
def test_dual_cauchy_sweep(mu, nu, reading):
    report = verify_dual_cauchy(mu, nu, n=2, m=1, D=3, reading=reading)
    assert report.status == 'exact-pass', report.witness

def test_dual_cauchy_two_by_two():
    reports = dual_cauchy_readings(EMPTY, EMPTY, n=2, m=2, D=4)
    assert all(r.passed for r in reports.values())

@pytest.mark.parametrize('lam,mu', OMEGA_CASES, ids=str)
def test_omega_sweep(lam, mu):
    assert verify_omega_W(lam, mu).status == 'exact-pass'
    assert verify_omega_F(lam, mu, D=sum(lam)).status == 'exact-pass'

if __name__ == '__main__':
    TestVerifyReport().test_main()
    TestVerifyReport().test_bad_status()
    test_cauchy_F()
    test_cauchy_F_catches_a_broken_family()
    test_dual_cauchy()
    test_cauchy_HL()
    test_omega_W()
    test_omega_F()
    test_macd_cauchy()
    test_littlewood()
    test_dispatch()
    for mu in TINY:
        for nu in TINY:
            test_cauchy_F_sweep(mu, nu)
            test_cauchy_HL_sweep(mu, nu)
            test_dual_cauchy_sweep(mu, nu, 'independent')
            test_dual_cauchy_sweep(mu, nu, 'shared')
    test_cauchy_HL_two_variables()
    test_dual_cauchy_two_by_two()
    for lam, mu in OMEGA_CASES:
        test_omega_sweep(lam, mu)
