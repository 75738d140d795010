import pytest

from iqwhit.core.structure import product_F
from iqwhit.engine.golden import GOLDEN, golden_suite
from iqwhit.engine.pool import run_cases

SWEEPS = [
    'F_mu F_nu dual = direct',
    'F_lam/mu dual = direct',
    'a natural, b alternating',
    'Cauchy identities',
    'omega dualities',
]

def test_main():
    report = golden_suite()
    failed = [name for name, r in report if not r.passed]
    assert not failed, failed
    assert len(report) == len(GOLDEN)
    assert report.to_dict()['passed']
    for name in SWEEPS:
        assert report[name].status == 'exact-pass', report[name].witness

def test_subset():
    report = golden_suite(['F_1 F_1', 'W_1 column'], threads=2)
    assert [name for name, _ in report] == ['F_1 F_1', 'W_1 column']
    assert report['W_1 column'].status == 'exact-pass'
    assert report.summary == '2/2 passed'

    with pytest.raises(IndexError):
        report['F_(2,0)']
    with pytest.raises(ValueError):
        golden_suite(['no such case'])

def test_raising_case():
    def broken():
        return product_F((1,), (1,), algorithm='neither')

    GOLDEN['broken'] = broken
    try:
        for threads in (1, 2):
            report = golden_suite(['F_1 F_1', 'broken'], threads=threads)
            assert report['F_1 F_1'].passed
            assert report['broken'].status == 'fail'
            assert report['broken'].witness.startswith('ValueError: Unknown algorithm')
            assert report.summary == '1/2 passed'
    finally:
        del GOLDEN['broken']

def test_run_cases_errors():
    def halve(n):
        if n % 2:
            raise ValueError(f'{n} is odd')
        return n // 2

    cases = {'a': 4, 'b': 3, 'c': 8}
    with pytest.raises(ValueError):
        run_cases(halve, cases, threads=1)

    for threads in (1, 3):
        found = run_cases(halve, cases, threads=threads,
                          on_error=lambda key, err: str(err))
        assert found == {'a': 2, 'b': '3 is odd', 'c': 4}

if __name__ == '__main__':
    test_main()
    test_subset()
    test_raising_case()
    test_run_cases_errors()
