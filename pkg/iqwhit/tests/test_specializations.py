import math

import pytest
from sympy import QQ

from iqwhit.core.partitions import EMPTY, Partition
from iqwhit.core.polyspace import elementary
from iqwhit.core.scalars import q, same
from iqwhit.core.specializations import (
    F_spec,
    F_spec_union,
    SpecDesc,
    littlewood_check,
    phi_on_p,
    phi_on_symfunc,
    phi_sequence,
    plancherel_transition,
    row_generating_series,
    w_from_phi,
    w_generating_series,
)

class TestSpecDesc:
    def test_main(self):
        spec = SpecDesc(alphas=(QQ(1, 2), QQ(1, 3)), q=QQ(1, 2))
        assert not spec.numeric
        assert spec.generators() == [('alpha', QQ(1, 2)), ('alpha', QQ(1, 3))]
        assert spec.to_dict()['alphas'] == ['1/2', '1/3']
        assert SpecDesc(gamma=0.7, q=0.5).numeric

    def test_validation(self):
        for kwargs in (
            {'alphas': (QQ(1, 3), QQ(1, 2))},
            {'alphas': (QQ(-1, 2),)},
            {'alphas': (QQ(3, 2),)},
            {'gamma': -1},
            {'q': 1.5},
        ):
            with pytest.raises(ValueError):
                SpecDesc(**kwargs)
        assert SpecDesc(alphas=(1,)).degenerate

def test_power_sums():
    assert phi_on_p(SpecDesc(alphas=(QQ(1, 2),)), 2) == QQ(1, 4)
    assert same(phi_on_p(SpecDesc(betas=(QQ(1, 2),)), 1), (1 - q) / 2)
    assert phi_on_p(SpecDesc(gamma=QQ(1, 3)), 1) == QQ(1, 3)

    spec = SpecDesc(alphas=(QQ(1, 2), QQ(1, 3)))
    assert same(phi_on_symfunc(spec, elementary(2)), QQ(1, 6))

    with pytest.raises(ValueError):
        phi_on_p(spec, 0)

def test_generating_series():
    spec = SpecDesc(alphas=(QQ(1, 2), QQ(1, 3)))
    assert w_generating_series(spec, 2) == [QQ(5, 6), QQ(1, 6)]

    rows = row_generating_series(SpecDesc(betas=(QQ(1, 2),), q=QQ(1, 2)), 2)
    assert rows == [QQ(1, 2), 0]

def test_alpha_and_beta():
    spec = SpecDesc(alphas=(QQ(2, 5),), q=QQ(1, 2))
    assert F_spec(spec, (1,), (1,)) == QQ(3, 5)

    pair = SpecDesc(alphas=(QQ(1, 2), QQ(1, 3)), q=QQ(1, 2))
    assert F_spec_union(pair, (1,)) == QQ(2, 3)
    assert F_spec_union(pair, EMPTY, (1,)) == 0

    dual = SpecDesc(betas=(QQ(1, 3),), q=QQ(1, 2))
    assert F_spec(dual, (1,)) == QQ(1, 8)
    assert F_spec_union(dual, (1,)) == QQ(1, 8)

    with pytest.raises(ValueError):
        F_spec(pair, (1,))

def test_plancherel():
    spec = SpecDesc(gamma=0.7, q=0.5)
    assert math.isclose(F_spec(spec, (1,)), 1 - math.exp(-0.7), rel_tol=1e-9)

def test_plancherel_transition():
    row = plancherel_transition(EMPTY, 0.7, 0.5, cap=3)
    assert row.converged
    assert row.value[EMPTY] == 1.0
    assert math.isclose(row.value[Partition((1,))], 1 - math.exp(-0.7), rel_tol=1e-9)

    with pytest.raises(ValueError):
        plancherel_transition(EMPTY, 0.7, 0.5)

def test_phi_sequence():
    single = SpecDesc(alphas=(QQ(1, 2),), q=QQ(1, 2))
    assert phi_sequence(single, 2) == [QQ(1, 2), 0]

    pair = SpecDesc(alphas=(QQ(1, 2), QQ(1, 3)), q=QQ(1, 2))
    phis = phi_sequence(pair, 3)
    assert phis == [QQ(2, 3), QQ(1, 6), 0]
    assert 1 >= phis[0] >= phis[1] >= phis[2] >= 0

    with pytest.raises(ValueError):
        phi_sequence(pair, 0)

def test_w_from_phi():
    result = w_from_phi([1.0, 0.5], 1)
    assert result.value == 1.5
    assert result.terms == 2
    assert not result.converged

    with pytest.raises(ValueError):
        w_from_phi([1.0], 2)

def test_littlewood():
    result = littlewood_check([0.3, 0.2], cap=30, q=0.5)
    assert result.converged

    with pytest.raises(ValueError):
        littlewood_check([1.2], q=0.5)

if __name__ == '__main__':
    TestSpecDesc().test_main()
    TestSpecDesc().test_validation()
    test_power_sums()
    test_generating_series()
    test_alpha_and_beta()
    test_plancherel()
    test_plancherel_transition()
    test_phi_sequence()
    test_w_from_phi()
    test_littlewood()
