import math

import pytest
from sympy import QQ

from iqwhit.core.scalars import (
    coerce,
    format_ratq,
    is_natural,
    parse_scalar,
    q,
    q_poly,
    qbinom,
    qpoch,
    qpoch_infinite,
    same,
    substitute_q,
    to_float,
)

class TestQAnalogues:
    def test_qpoch(self):
        assert same(qpoch(q, 2), (1 - q) * (1 - q**2))
        assert format_ratq(qpoch(q, 0)) == '1'
        assert qpoch(QQ(1, 2), 2, base=QQ(1, 2)) == QQ(3, 8)

        with pytest.raises(ValueError):
            qpoch(q, -1)

    def test_qbinom(self):
        expected = 1 + q_poly + 2 * q_poly**2 + q_poly**3 + q_poly**4
        assert qbinom(4, 2) == expected
        assert not qbinom(3, 5)
        assert is_natural(qbinom(4, 2))
        assert not is_natural(1 - q)

    def test_qpoch_infinite(self):
        assert math.isclose(qpoch_infinite(0.5, 0.5), 0.2887880950866024, rel_tol=1e-12)
        with pytest.raises(ValueError):
            qpoch_infinite(0.5, 1.0)

def test_parse_scalar():
    assert parse_scalar('1/3') == QQ(1, 3)
    assert parse_scalar('2') == QQ(2)

    value = parse_scalar('0.5')
    assert isinstance(value, float) and value == 0.5

    for bad in ('', 'abc'):
        with pytest.raises(ValueError):
            parse_scalar(bad)

def test_substitute_q():
    assert substitute_q(1 - q, QQ(1, 2)) == QQ(1, 2)
    assert substitute_q(1 / (1 - q), 0.5) == 2.0
    assert substitute_q(1 - q, '1/4') == QQ(3, 4)

    with pytest.raises(ValueError):
        substitute_q(1 / (1 - q), QQ(1))

def test_coerce_and_format():
    assert same(coerce('1-q'), 1 - q)
    assert format_ratq(1 - q) == '-q + 1'
    assert to_float(1 - q, 0.25) == 0.75

    with pytest.raises(ValueError):
        coerce(0.5)
    with pytest.raises(ValueError):
        to_float(1 - q)

if __name__ == '__main__':
    TestQAnalogues().test_qpoch()
    TestQAnalogues().test_qbinom()
    TestQAnalogues().test_qpoch_infinite()
    test_parse_scalar()
    test_substitute_q()
    test_coerce_and_format()
