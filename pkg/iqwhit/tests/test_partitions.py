import math

import pytest

from iqwhit.core.partitions import (
    EMPTY,
    Partition,
    b_hl,
    b_macdonald,
    conjugate,
    enumerate_partitions,
    eta,
    is_horizontal_strip,
    is_rook_strip,
    is_vertical_strip,
    kappa,
    parse_partition,
    partitions_in_box,
    partitions_of,
    partitions_up_to,
    reachable,
    rook_successors,
    skew_stats,
    strip_predecessors,
    strip_successors,
    subpartitions,
)
from iqwhit.core.scalars import mq, mt, q, qpoch, same

class TestPartition:
    def test_main(self):
        lam = Partition((3, 1, 0))
        assert lam == (3, 1)
        assert repr(lam) == 'Partition((3, 1))'
        assert str(EMPTY) == '0'
        assert lam.size == 4 and lam.length == 2
        assert lam.part(3) == 0
        assert Partition((2, 1, 1)).multiplicity(1) == 2
        assert lam.multiplicity(2) == 0

        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(IndexError):
            lam.part(0)
        with pytest.raises(ValueError):
            lam.multiplicity(0)

    def test_parse(self):
        assert parse_partition('3,1,1') == Partition((3, 1, 1))
        assert parse_partition('') == EMPTY
        assert parse_partition('0') == EMPTY
        assert Partition('2,1') == Partition((2, 1))

        with pytest.raises(ValueError):
            parse_partition('a,b')

def test_conjugate():
    assert conjugate(Partition((3, 1))) == Partition((2, 1, 1))
    for lam in partitions_up_to(6):
        assert conjugate(conjugate(lam)) == lam

def test_enumeration():
    assert [str(p) for p in partitions_of(3)] == ['3', '2,1', '1,1,1']
    assert len(list(partitions_of(5))) == 7
    assert len(list(partitions_up_to(4))) == 12
    assert len(list(partitions_in_box(2, 2))) == 6
    assert len(list(subpartitions(Partition((2, 1))))) == 5

    with pytest.raises(ValueError):
        enumerate_partitions('bogus')

def test_strips():
    assert is_horizontal_strip(Partition((2,)), Partition((3, 1)))
    assert is_horizontal_strip(Partition((1,)), Partition((1, 1)))
    assert not is_horizontal_strip(EMPTY, Partition((1, 1)))
    assert is_vertical_strip(EMPTY, Partition((1, 1)))
    assert is_rook_strip(Partition((1,)), Partition((2, 1)))
    assert not is_rook_strip(EMPTY, Partition((2,)))

    assert reachable(EMPTY, Partition((2, 1)), 2)
    assert not reachable(EMPTY, Partition((2, 1)), 1)

def test_successors():
    assert strip_successors(EMPTY, max_increment=2) == [
        EMPTY, Partition((1,)), Partition((2,))
    ]
    assert strip_successors(Partition((1,)), max_increment=1) == [
        Partition((1,)), Partition((2,)), Partition((1, 1))
    ]
    assert len(strip_predecessors(Partition((2, 1)))) == 4
    assert rook_successors(EMPTY) == [Partition((1,))]

    with pytest.raises(ValueError):
        strip_successors(EMPTY)

def test_weights():
    assert same(b_hl(Partition((2, 1, 1))), (1 - q) * (1 - q) * (1 - q**2))
    assert math.isclose(b_hl(Partition((1, 1)), 0.5), 0.375)
    assert same(kappa(Partition((2, 1)), Partition((1,))), 1 - q)
    assert same(eta(Partition((2,)), EMPTY), 1 / qpoch(q, 2))
    assert same(b_macdonald(Partition((1,))), (1 - mt) / (1 - mq))

    with pytest.raises(ValueError):
        eta(Partition((1, 1)), EMPTY)

def test_skew_stats():
    stats = skew_stats(Partition((2, 1)), Partition((1,)))
    assert stats.rows == 2
    assert stats.F_set == frozenset({1})
    assert stats.E_set == frozenset()
    assert stats.r_tilde == 0

if __name__ == '__main__':
    TestPartition().test_main()
    TestPartition().test_parse()
    test_conjugate()
    test_enumeration()
    test_strips()
    test_successors()
    test_weights()
    test_skew_stats()
