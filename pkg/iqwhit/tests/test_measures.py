import math
import os
import tempfile
from collections import Counter

import pytest

from iqwhit.core.measures import (
    MeasureTable,
    measure_sample,
    measure_samples,
    measure_table,
    normalization_orientation,
    partition_function,
    z_closed_form,
)
from iqwhit.core.partitions import EMPTY, Partition
from iqwhit.core.scalars import qpoch_infinite
from iqwhit.core.specializations import SpecDesc

SPEC = SpecDesc(alphas=(0.5,), q=0.5)

class TestMeasureTable:
    def test_single_alpha(self):
        table = measure_table(SPEC, cap=40)
        assert isinstance(table, MeasureTable)
        assert abs(table.total - 1) < 1e-9
        assert abs(table.tail_mass) < 1e-9

        scale = qpoch_infinite(0.5, 0.5)
        assert math.isclose(table[EMPTY], scale, rel_tol=1e-9)
        assert math.isclose(table['1'], scale, rel_tol=1e-9)
        assert table['1,1'] == 0.0
        assert math.isclose(table.Z * scale, 1.0, rel_tol=1e-9)

    def test_to_dict(self):
        table = measure_table(SPEC, cap=10)
        info = table.to_dict()
        assert info['orientation'] == 'proof'
        assert info['cap'] == 10
        assert '0' in info['entries']
        assert str(table).startswith('<MeasureTable: measure-')

    def test_bad_input(self):
        with pytest.raises(ValueError):
            measure_table(SpecDesc(alphas=(1,), q=0.5))
        with pytest.raises(ValueError):
            measure_table(SpecDesc(alphas=(0.5,)))
        with pytest.raises(ValueError):
            measure_table(SPEC, orientation='sideways')
        with pytest.raises(ValueError):
            measure_table(SPEC, cap=2, tail_bound=1e-6)

    def test_plot(self):
        table = measure_table(SPEC, cap=15)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'measure.png')
            table.plot(path)
            assert os.path.exists(path)

def test_partition_function():
    assert math.isclose(partition_function(SPEC), 1 / qpoch_infinite(0.5, 0.5),
                        rel_tol=1e-9)
    assert math.isclose(z_closed_form(SPEC), partition_function(SPEC), rel_tol=1e-9)

    plancherel = SpecDesc(gamma=0.5, q=0.5)
    assert math.isclose(partition_function(plancherel), math.exp(1.0), rel_tol=1e-8)

def test_orientation():
    found = normalization_orientation(SPEC, cap=40)
    assert found['normalized'] == 'proof'
    assert abs(found['proof'] - 1) < 1e-9

class TestSampler:
    def test_reproducible(self):
        spec = SpecDesc(alphas=(0.5, 0.3), q=0.5)
        first = measure_samples(spec, n=20, seed=7)
        second = measure_samples(spec, n=20, seed=7)
        assert first == second
        assert all(len(lam) <= 2 for lam in first)

    def test_against_table(self):
        samples = measure_samples(SPEC, n=2000, seed=11)
        assert all(len(lam) <= 1 for lam in samples)

        table = measure_table(SPEC, cap=40)
        assert table.total_variation(Counter(samples)) < 0.1

        with pytest.raises(ValueError):
            table.total_variation({})

    def test_unsupported(self):
        with pytest.raises(NotImplementedError):
            measure_sample(SpecDesc(alphas=(0.5,), gamma=0.2, q=0.5))
        assert measure_sample(SpecDesc(q=0.5), Partition((2, 1)), rng=3) == Partition((2, 1))

if __name__ == '__main__':
    TestMeasureTable().test_single_alpha()
    TestMeasureTable().test_to_dict()
    TestMeasureTable().test_bad_input()
    TestMeasureTable().test_plot()
    test_partition_function()
    test_orientation()
    TestSampler().test_reproducible()
    TestSampler().test_against_table()
    TestSampler().test_unsupported()
