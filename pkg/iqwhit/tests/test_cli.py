import io
import json
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout

from iqwhit.cli import main

def _run(argv: list) -> tuple:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()

def test_product():
    code, out, _ = _run(['product', '--mu', '1', '--nu', '1', '--algo', 'both', '--json'])
    assert code == 0
    payload = json.loads(out)
    assert payload['algorithms_agree'] is True
    assert payload['dual']['2'] == '1'

def _coefficients(payload: dict) -> dict:
    skip = ('mu', 'nu', 'lambda', 'algorithm', 'basis', 'truncation')
    return {k: v for k, v in payload.items() if k not in skip}

def test_product_default_algorithm():
    for mu, nu in (('1', '1'), ('2,1', '1'), ('1,1', '2')):
        code, out, _ = _run(['product', '--mu', mu, '--nu', nu, '--json'])
        assert code == 0
        dual = json.loads(out)['dual']

        code, out, _ = _run(['product', '--mu', mu, '--nu', nu, '--algo', 'direct',
                             '--json'])
        assert code == 0
        assert dual == json.loads(out)['direct']

def test_skew_expand():
    code, out, _ = _run(['skew-expand', '--lambda', '2,1', '--mu', '1', '--json'])
    assert code == 0
    payload = json.loads(out)
    assert payload['algorithm'] == 'dual'
    assert payload['2,1'] == '-2'

    for lam, mu in (('2,1', '1'), ('3,1', '2'), ('2,2', '1')):
        code, out, _ = _run(['skew-expand', '--lambda', lam, '--mu', mu, '--json'])
        assert code == 0
        dual = _coefficients(json.loads(out))

        code, out, _ = _run(['skew-expand', '--lambda', lam, '--mu', mu,
                             '--algo', 'direct', '--json'])
        assert code == 0
        assert dual == _coefficients(json.loads(out))

def test_poly():
    code, out, _ = _run(['poly', 'expand', '--family', 'W', '--lambda', '1', '--n', '2',
                         '--json'])
    assert code == 0
    assert json.loads(out)['terms'] == {'x2': '1', 'x1': '1'}

    code, out, _ = _run(['poly', 'eval', '--lambda', '1', '--n', '2', '--x', '1/2,1/3',
                         '--q', '1/2', '--json'])
    assert code == 0
    assert json.loads(out)['value'] == '2/3'

def test_spec_eval():
    code, out, _ = _run(['spec', 'eval', '--alphas', '2/5', '--q', '1/2',
                         '--lambda', '1', '--mu', '1', '--json'])
    assert code == 0
    assert json.loads(out)['value'] == '3/5'

def test_verify():
    code, out, _ = _run(['verify', 'dual-cauchy', '--n', '1', '--m', '1', '--deg', '3',
                         '--json'])
    assert code == 0
    assert json.loads(out)['status'] == 'exact-pass'

def test_measure():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'table.json')
        code, out, _ = _run(['measure', 'table', '--alphas', '0.5', '--q', '0.5',
                             '--cap', '40', '--json', '--output', path])
        assert code == 0
        assert out == ''
        with open(path) as f:
            payload = json.load(f)
        assert abs(payload['tail_mass']) < 1e-9
        assert payload['orientation'] == 'proof'

    code, out, _ = _run(['measure', 'sample', '--alphas', '0.5', '--q', '0.5',
                         '--n', '5', '--seed', '3'])
    assert code == 0
    assert len(out.strip().split('\n')) == 5

def test_errors():
    code, _, err = _run(['poly', 'expand', '--lambda', 'a'])
    assert code == 2
    assert 'Error' in err

    code, _, _ = _run(['bogus'])
    assert code == 2

    code, _, err = _run(['measure', 'table', '--alphas', '0.5'])
    assert code == 2
    assert 'numeric value for q' in err

if __name__ == '__main__':
    test_product()
    test_product_default_algorithm()
    test_skew_expand()
    test_poly()
    test_spec_eval()
    test_verify()
    test_measure()
    test_errors()
