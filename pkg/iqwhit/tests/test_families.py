import math

import pytest
from sympy import QQ

from iqwhit.core.families import (
    eval_skew,
    expand_skew,
    lift_family,
    macd_q_from_p,
    macd_specialize,
    mcoords,
    monomial_coefficient,
    one_var,
)
from iqwhit.core.partitions import (
    EMPTY,
    Partition,
    b_macdonald,
    psi_macdonald,
    psibar_macdonald,
)
from iqwhit.core.polyspace import drop_last_variable, poly_ring
from iqwhit.core.scalars import q, same

class TestOneVariable:
    def test_F(self):
        assert one_var('F', (1,), EMPTY).coeffs == (0, 1)

        skew = one_var('F', (1,), (1,))
        assert same(skew.coefficient(0), 1)
        assert same(skew.coefficient(1), -1)

        assert not one_var('F', (1, 1), EMPTY)

    def test_homogeneous(self):
        w = one_var('W', (2,), (1,))
        assert w.degree == 1
        assert same(w.coefficient(1), 1 + q)

    def test_Ftilde(self):
        ft = one_var('Ftilde', (1,), EMPTY)
        assert same(ft.coefficient(0), -1 / (1 - q))
        assert same(ft.coefficient(1), 1 / (1 - q))

    def test_J(self):
        J = one_var('J', (1,), EMPTY)
        assert J.pole == 1
        assert same(J.coefficient(1), 1 - q)
        assert same(J.coefficient(2), q - 1)
        assert math.isclose(J(0.5, 0.5), 0.5 * 0.5 / 1.5)

        with pytest.raises(ValueError):
            J(-1.0, 0.5)

    def test_j(self):
        # one x for the single run of columns 1-2, one factor for column 1
        j = one_var('j', (2, 1), (1,))
        assert j.degree == 2
        assert same(j.coefficient(0), 0)
        assert same(j.coefficient(1), q * (1 - q))
        assert same(j.coefficient(2), 1 - q)

def test_expand_skew():
    R = poly_ring(2)
    x1, x2 = R.gens
    assert expand_skew('F', (1,), EMPTY, 2) == x1 + x2 - x1 * x2
    assert expand_skew('W', (1,), EMPTY, 2) == x1 + x2
    assert not expand_skew('F', (1, 1, 1), EMPTY, 2)

    with pytest.raises(ValueError):
        expand_skew('G', (1,), EMPTY, 2)
    with pytest.raises(ValueError):
        expand_skew('F', (1,), EMPTY, 0)

def test_j_two_rows():
    R = poly_ring(2)
    x1, x2 = R.gens
    expected = x1 * x2 * (x1 + x2 + 1 + q) * (1 - q)**2
    assert expand_skew('j', (2, 1), EMPTY, 2) == expected
    assert expand_skew('j', (1, 1), EMPTY, 2) == x1 * x2 * (1 - q) * (1 - q**2)

def test_stability():
    for family in ('F', 'W', 'j'):
        three = expand_skew(family, (2, 1), EMPTY, 3)
        assert drop_last_variable(three) == expand_skew(family, (2, 1), EMPTY, 2)

def test_J_series():
    value = expand_skew('J', (1,), EMPTY, 1)
    assert value.poles == (1,)
    series = value.series(3)
    assert same(series[(2,)], q - 1)
    assert same(series[(3,)], 1 - q)

def test_eval_skew():
    assert math.isclose(eval_skew('F', (1,), EMPTY, [0.5, 0.5], 0.5), 0.75)
    exact = eval_skew('F', (1,), EMPTY, [QQ(1, 2), QQ(1, 3)], QQ(1, 2))
    assert exact == QQ(2, 3)

    with pytest.raises(ValueError):
        eval_skew('F', (1,), EMPTY, [0.5, 0.5])

def test_coordinates():
    coords = mcoords('W', (1,), EMPTY, 2)
    assert list(coords) == [Partition((1,))]
    assert same(monomial_coefficient('F', (1,), EMPTY, (1, 1)), -1)

    with pytest.raises(ValueError):
        mcoords('J', (1,), EMPTY, 2)
    with pytest.raises(ValueError):
        lift_family('Ftilde', (1,), EMPTY, 2)

def test_macdonald_limits():
    assert same(macd_specialize(b_macdonald(Partition((1,))), t_value=0), 1 / (1 - q))

def test_macdonald_p_to_q():
    for lam, mu in (((1,), EMPTY), ((2,), (1,)), ((2, 1), (1,))):
        lam, mu = Partition(lam), Partition(mu)
        assert same(psibar_macdonald(lam, mu),
                    macd_q_from_p(lam, mu) * psi_macdonald(lam, mu))
    assert same(psi_macdonald(Partition((1,)), EMPTY), 1)

    with pytest.raises(ValueError):
        psi_macdonald(Partition((1, 1)), EMPTY)
    with pytest.raises(ValueError):
        macd_q_from_p((1,), (1, 1))

if __name__ == '__main__':
    TestOneVariable().test_F()
    TestOneVariable().test_homogeneous()
    TestOneVariable().test_Ftilde()
    TestOneVariable().test_J()
    TestOneVariable().test_j()
    test_expand_skew()
    test_j_two_rows()
    test_stability()
    test_J_series()
    test_eval_skew()
    test_coordinates()
    test_macdonald_limits()
    test_macdonald_p_to_q()
