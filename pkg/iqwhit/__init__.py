__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

from .core.partitions import Partition, parse_partition
from .core.families import eval_skew, expand_skew, lift_family, one_var
from .core.polyspace import Expansion, SymFuncTrunc
from .core.structure import (
    a_expand,
    b_expand,
    hlq_expand,
    pieri_F,
    pieri_W,
    product_F,
    product_j,
    skew_F_expand,
)
from .core.specializations import F_spec, F_spec_union, SpecDesc
from .core.measures import MeasureTable, measure_sample, measure_table
from .engine.verify import VerifyReport, verify
from .engine.golden import golden_suite
