import io
from contextlib import redirect_stdout

import pytest

from iqwhit.core.partitions import Partition
from iqwhit.core.polyspace import (
    Expansion,
    SymFuncTrunc,
    drop_last_variable,
    elementary,
    embed,
    first_monomial,
    format_monomial,
    homogeneous_component,
    lift,
    mbasis_to_poly,
    monomial,
    pair_ring,
    poly_add,
    poly_mul,
    poly_ring,
    poly_scale,
    power_sum,
    substitute,
    symmetry_witness,
    to_mbasis,
    truncate,
)
from iqwhit.core.scalars import q, same

def test_polynomials():
    R = poly_ring(2)
    x1, x2 = R.gens
    f = x1**2 + x1 * x2 + x2

    assert truncate(f, 1) == x2
    assert first_monomial(f) == (0, 1)
    assert format_monomial((2, 1), ['x1', 'y1']) == 'x1^2*y1'
    assert format_monomial((0, 0)) == '1'
    assert substitute(x1 + x2 * q, [0.5, 0.25], 0.5) == 0.625

    S = pair_ring(1, 1)
    assert embed(poly_ring(1).gens[0], S, offset=1) == S.gens[1]
    with pytest.raises(ValueError):
        embed(f, S, offset=1)

def test_arithmetic():
    R = poly_ring(2)
    x1, x2 = R.gens
    f = poly_mul(1 - x1, 1 - x2)
    assert f == 1 - x1 - x2 + x1 * x2
    assert homogeneous_component(f, 1) == -x1 - x2
    assert poly_add(f, poly_scale(x1 * x2, -1)) == 1 - x1 - x2
    assert drop_last_variable(f) == 1 - poly_ring(1).gens[0]

    with pytest.raises(ValueError):
        poly_add(f, poly_ring(1).gens[0])

def test_symmetry():
    R = poly_ring(2)
    x1, x2 = R.gens
    assert symmetry_witness(x1) == (1, (1, 0))
    assert symmetry_witness(x1 + x2) is None
    assert to_mbasis(x1 + x2)[(1,)] == 1
    assert mbasis_to_poly({(1,): 1}, 2) == x1 + x2

    with pytest.raises(ValueError):
        to_mbasis(x1)

class TestExpansion:
    def test_main(self):
        e = Expansion('F', {(1,): 1, (2,): 0})
        assert len(e) == 1
        assert e[(1,)] == 1
        assert e['2'] == 0
        assert (e + e)[(1,)] == 2
        assert e.to_dict() == {'basis': 'F', 'truncation': 'exact-finite', '1': '1'}

        with pytest.raises(IndexError):
            e['x']
        with pytest.raises(ValueError):
            e + Expansion('W', {(1,): 1})

    def test_truncation(self):
        e = Expansion('F', {(1,): 1, (2, 1): 3})
        low = e.truncate(2)
        assert low.support == [Partition((1,))]
        assert low.truncation == 2

        with pytest.raises(ValueError):
            low.truncate(3)
        with pytest.raises(ValueError):
            e == low

    def test_identity(self):
        e = Expansion('F', {(1,): 1 - q, (2,): 2})
        assert e.id == Expansion('F', {(2,): 2, (1,): 1 - q, (3,): 0}).id
        assert e.id.startswith('F-')
        assert e.id != Expansion('W', e.coefficients).id
        assert e.id != e.truncate(2).id
        assert e.id != Expansion('F', {(1,): 1 - q}).id

        e.meta['basis'] = 'W'
        assert e.meta['basis'] == 'F'

    def test_help(self):
        out = io.StringIO()
        with redirect_stdout(out):
            Expansion('F', {(1,): 1}).help()
        text = out.getvalue()
        assert text.startswith('Expansion Help:')
        assert ' > expansion.compose()' in text
        assert ' > result.info()' in text
        assert 'basis, truncation, support, coefficients' in text

class TestSymFuncTrunc:
    def test_bases(self):
        m = elementary(2).to_basis('m')
        assert same(m['1,1'], 1)
        assert not m['2']

        square = (power_sum(1, 2) * power_sum(1, 2)).to_basis('m')
        assert same(square['2'], 1)
        assert same(square['1,1'], 2)

        with pytest.raises(ValueError):
            SymFuncTrunc('h', 2)

    def test_omega(self):
        h2 = elementary(2).omega('classical').to_basis('m')
        assert h2 == monomial((2,)) + monomial((1, 1))

        e3 = elementary(3)
        assert e3.omega('q0').omega('0q') == e3

        with pytest.raises(ValueError):
            e3.omega('bogus')

    def test_lift(self):
        R = poly_ring(2)
        x1, x2 = R.gens
        lifted = lift(x1 + x2, 1)
        assert same(lifted['1'], 1)

        with pytest.raises(ValueError):
            lift(x1 + x2, 3)

if __name__ == '__main__':
    test_polynomials()
    test_arithmetic()
    test_symmetry()
    TestExpansion().test_main()
    TestExpansion().test_truncation()
    TestExpansion().test_identity()
    TestExpansion().test_help()
    TestSymFuncTrunc().test_bases()
    TestSymFuncTrunc().test_omega()
    TestSymFuncTrunc().test_lift()
