import pytest

from iqwhit.core.families import lift_family
from iqwhit.core.partitions import (
    EMPTY,
    Partition,
    contains,
    partitions_up_to,
    subpartitions,
)
from iqwhit.core.polyspace import Expansion
from iqwhit.core.scalars import is_natural, q, qpoch
from iqwhit.core.structure import (
    a_expand,
    b_expand,
    expand_homogeneous,
    hlq_expand,
    pieri_F,
    pieri_power,
    pieri_W,
    product_F,
    product_j,
    skew_F_expand,
    w_expand_homogeneous,
)

F1_SQUARED = Expansion('F', {(2,): 1, (1, 1): 1 - q, (2, 1): q - 1})

class TestPieri:
    def test_one_box(self):
        assert pieri_F(EMPTY) == Expansion('F', {(1,): 1})
        assert pieri_F((1,)) == F1_SQUARED

    def test_one_row(self):
        assert pieri_W(1, EMPTY) == Expansion('W', {(1,): 1 / (1 - q)})
        assert pieri_power(2) == Expansion('W', {(2,): 1, (1, 1): 1 - q})

        with pytest.raises(ValueError):
            pieri_W(-1, EMPTY)

class TestProducts:
    def test_algorithms_agree(self):
        dual = product_F((1,), (1,), algorithm='dual')
        direct = product_F((1,), (1,), algorithm='direct')
        assert dual == direct
        assert dual == F1_SQUARED
        assert dual.meta['algorithm'] == 'dual'

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            product_F((1,), (1,), algorithm='fast')

    def test_hall_littlewood_pair(self):
        product = product_j((1,), (1,))
        assert product[(2,)] == 1 - q
        assert product[(1, 1)] == 1
        assert product[(1,)] == q - 1
        assert all(sum(lam) <= 2 for lam in product.support)

def test_skew_expand():
    expected = Expansion('F', {EMPTY: 1, (1,): -1})
    for algorithm in ('dual', 'direct'):
        assert skew_F_expand((1,), (1,), algorithm=algorithm) == expected

    with pytest.raises(ValueError):
        skew_F_expand((1,), (2,))

def test_change_of_basis():
    assert a_expand((1,), 3) == Expansion('F', {(1,): 1, (1, 1): 1, (1, 1, 1): 1},
                                          truncation=3)
    assert b_expand((1, 1), 4) == Expansion('W', {(1, 1): 1, (1, 1, 1): -2,
                                                  (1, 1, 1, 1): 3}, truncation=4)
    round_trip = a_expand((1,), 3).compose(lambda mu: b_expand(mu, 3))
    assert round_trip == Expansion('W', {(1,): 1}, truncation=3)

    with pytest.raises(ValueError):
        a_expand((2, 1), 2)

def test_hall_littlewood():
    assert hlq_expand((2,)) == Expansion('HLQ', {(2,): 1, (1,): 1})

    with pytest.raises(ValueError):
        hlq_expand((1, 1), n=1)

def test_expand_homogeneous():
    with pytest.raises(ValueError):
        expand_homogeneous({Partition((1,)): 1, Partition((2,)): 1}, 2)


SMALL = [lam for lam in partitions_up_to(3) if lam]
PAIRS = [(mu, nu) for i, mu in enumerate(SMALL) for nu in SMALL[i:]]
SKEWS = [
    (lam, mu)
    for lam in partitions_up_to(4) if lam
    for mu in subpartitions(lam)
]

@pytest.mark.parametrize('mu,nu', PAIRS, ids=str)
def test_product_algorithms(mu, nu):
    dual = product_F(mu, nu)
    assert dual == product_F(mu, nu, algorithm='direct')

    rows, cols = len(mu) + len(nu), mu.part(1) + nu.part(1)
    for lam in dual.support:
        assert len(lam) <= rows
        assert lam.part(1) <= cols
        assert sum(lam) >= sum(mu) + sum(nu)
        assert contains(lam, mu) and contains(lam, nu)

    # the lowest layer is W_mu W_nu, which is never zero
    assert any(sum(lam) == sum(mu) + sum(nu) for lam in dual.support)

@pytest.mark.parametrize('mu,nu', [(mu, nu) for mu, nu in PAIRS if mu != nu
                                   and sum(mu) + sum(nu) <= 4], ids=str)
def test_product_commutes(mu, nu):
    assert product_F(mu, nu) == product_F(nu, mu)

@pytest.mark.parametrize('mu,nu,rho', [
    ((1,), (1,), (1,)),
    ((1,), (2,), (1, 1)),
    ((1, 1), (1,), (2,)),
])
def test_product_associates(mu, nu, rho):
    left = product_F(mu, nu).compose(lambda lam: product_F(lam, rho))
    right = product_F(nu, rho).compose(lambda lam: product_F(mu, lam))
    assert left == right

@pytest.mark.parametrize('nu', list(partitions_up_to(4)), ids=str)
def test_pieri_is_a_product(nu):
    assert pieri_F(nu) == product_F((1,), nu)

@pytest.mark.parametrize('i,nu', [
    (i, nu) for i in (1, 2) for nu in partitions_up_to(4 - i)
], ids=str)
def test_pieri_W_against_lift(i, nu):
    D = i + sum(nu)
    product = lift_family('W', (i,), EMPTY, D) * lift_family('W', nu, EMPTY, D)
    assert w_expand_homogeneous(product) == pieri_W(i, nu).scale(qpoch(q, i))

@pytest.mark.parametrize('lam,mu', SKEWS, ids=str)
def test_skew_algorithms(lam, mu):
    dual = skew_F_expand(lam, mu)
    assert dual == skew_F_expand(lam, mu, algorithm='direct')
    assert all(sum(nu) >= sum(lam) - sum(mu) for nu in dual.support)

def test_skew_values():
    assert skew_F_expand((2, 1), (1,))[(2, 1)] == -2
    assert skew_F_expand((2,), EMPTY) == Expansion('F', {(2,): 1})

@pytest.mark.parametrize('lam', [lam for lam in partitions_up_to(4) if lam], ids=str)
def test_change_of_basis_signs(lam):
    D = sum(lam) + 1
    a = a_expand(lam, D)
    b = b_expand(lam, D)
    assert a[lam] == 1 and b[lam] == 1
    assert all(is_natural(c) for c in a.coefficients.values())
    for mu, c in b.items():
        assert is_natural(c * (-1)**(sum(mu) - sum(lam))), (mu, c)

if __name__ == '__main__':
    TestPieri().test_one_box()
    TestPieri().test_one_row()
    TestProducts().test_algorithms_agree()
    TestProducts().test_unknown_algorithm()
    TestProducts().test_hall_littlewood_pair()
    test_skew_expand()
    test_change_of_basis()
    test_hall_littlewood()
    test_expand_homogeneous()
    for mu, nu in PAIRS:
        test_product_algorithms(mu, nu)
    test_product_associates((1,), (1,), (1,))
    for nu in partitions_up_to(4):
        test_pieri_is_a_product(nu)
        if sum(nu) <= 3:
            test_pieri_W_against_lift(1, nu)
    for lam, mu in SKEWS:
        test_skew_algorithms(lam, mu)
    test_skew_values()
    for lam in SMALL:
        test_change_of_basis_signs(lam)
