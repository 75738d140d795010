__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from iqwhit.utils import logstream

from .scalars import one_like, qpoch, q as formal

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

class Partition(tuple):
    """
    Integer partition stored without trailing zeros. Parts beyond the length
    read as zero through :meth:`part`.

    >>> Partition((3, 1, 0))
    Partition((3, 1))
    >>> str(Partition(()))
    '0'
    """

    def __new__(cls, parts=()):
        if isinstance(parts, Partition):
            return parts
        if isinstance(parts, str):
            return parse_partition(parts)
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for i, p in enumerate(parts):
            if p <= 0:
                raise ValueError(
                    f'Partition parts must be positive, got {parts}'
                )
            if i and p > parts[i - 1]:
                raise ValueError(
                    f'Partition parts must be weakly decreasing, got {parts}'
                )
        return super().__new__(cls, parts)

    def __str__(self):
        if not self:
            return '0'
        return ','.join(str(p) for p in self)

    def __repr__(self):
        return f'Partition({tuple(self)})'

    def part(self, r: int) -> int:
        """1-based part access, zero beyond the length."""
        if r < 1:
            raise IndexError(f'Partition rows are 1-based, got {r}')
        return self[r - 1] if r <= len(self) else 0

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> 'Partition':
        return conjugate(self)

    def multiplicity(self, i: int) -> int:
        return multiplicity(self, i)

    def contains(self, other) -> bool:
        """True when ``other`` is a subpartition of this one."""
        return contains(self, Partition(other))

EMPTY = Partition(())

def parse_partition(text: str) -> Partition:
    """
    Read ``"3,1,1"``; the empty string and ``"0"`` give the empty partition.
    """
    text = (text or '').strip().strip('()[]')
    if text in ('', '0', '∅'):
        return EMPTY
    try:
        parts = [int(p) for p in text.replace(' ', '').split(',') if p != '']
    except ValueError:
        raise ValueError(f'Could not read "{text}" as a partition')
    return Partition(parts)

def graded_key(lam: Partition) -> tuple:
    """Sort key for graded reverse-lexicographic order."""
    return (sum(lam), tuple(-p for p in lam))

@lru_cache(maxsize=None)
def conjugate(lam: Partition) -> Partition:
    """
    Transpose of the Young diagram.

    >>> conjugate(Partition((3, 1)))
    Partition((2, 1, 1))
    """
    lam = Partition(lam)
    if not lam:
        return EMPTY
    return Partition(
        [sum(1 for p in lam if p >= c) for c in range(1, lam[0] + 1)]
    )

def multiplicity(lam: Partition, i: int) -> int:
    if i < 1:
        raise ValueError(f'Multiplicities are defined for i >= 1, got {i}')
    return sum(1 for p in lam if p == i)

def contains(lam: Partition, mu: Partition) -> bool:
    """True when ``mu`` is contained in ``lam`` (componentwise)."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))

def is_horizontal_strip(mu: Partition, lam: Partition) -> bool:
    """
    Interlacing ``lam_1 >= mu_1 >= lam_2 >= mu_2 >= ...``; written ``mu < lam``.
    """
    mu, lam = Partition(mu), Partition(lam)
    if len(lam) > len(mu) + 1 or len(mu) > len(lam):
        return False
    for r in range(1, len(lam) + 1):
        if not (lam.part(r) >= mu.part(r) >= lam.part(r + 1)):
            return False
    return True

def is_vertical_strip(mu: Partition, lam: Partition) -> bool:
    return is_horizontal_strip(conjugate(Partition(mu)), conjugate(Partition(lam)))

def is_rook_strip(mu: Partition, lam: Partition) -> bool:
    """At most one box in every row and every column."""
    return is_horizontal_strip(mu, lam) and is_vertical_strip(mu, lam)

def reachable(mu: Partition, nu: Partition, steps: int) -> bool:
    """
    True when ``nu`` can be reached from ``mu`` by ``steps`` horizontal strips.
    """
    if not contains(nu, mu):
        return False
    return all(
        nu.part(j + steps) <= mu.part(j) for j in range(1, len(nu) + 1)
    )

def skew_size(lam: Partition, mu: Partition) -> int:
    return sum(lam) - sum(mu)

def b_hl(lam: Partition, base=None):
    """
    ``prod_i (q;q)_{m_i(lam)}`` over the part sizes of ``lam``.
    """
    base = formal if base is None else base
    result = one_like(base)
    for i in set(lam):
        result = result * qpoch(base, multiplicity(lam, i), base)
    return result

def kappa(lam: Partition, mu: Partition, base=None):
    """
    ``prod (1 - q^{m_i(lam)})`` over the ``i`` with ``m_i(lam) = m_i(mu) + 1``.
    """
    lam, mu = Partition(lam), Partition(mu)
    if not contains(lam, mu):
        raise ValueError(f'kappa needs {mu} inside {lam}')
    base = formal if base is None else base
    result = one_like(base)
    for i in sorted(set(lam)):
        m = multiplicity(lam, i)
        if m == multiplicity(mu, i) + 1:
            result = result * (1 - base**m)
    return result

@dataclass(frozen=True)
class SkewStats:
    """
    Row and column statistics of a skew diagram. ``r_tilde`` is None when
    the first-row-removed outer shape is not inside the inner shape.
    """
    rows: int
    F_set: frozenset
    E_set: frozenset
    r_tilde: int = None

def _nonempty_columns(lam: Partition, mu: Partition) -> set:
    lc, mc = conjugate(lam), conjugate(mu)
    return {c for c in range(1, lam.part(1) + 1) if lc.part(c) > mc.part(c)}

@lru_cache(maxsize=None)
def skew_stats(lam: Partition, mu: Partition) -> SkewStats:
    lam, mu = Partition(lam), Partition(mu)
    if not contains(lam, mu):
        raise ValueError(f'Skew shape {lam}/{mu} needs {mu} inside {lam}')

    rows = sum(1 for r in range(1, len(lam) + 1) if lam.part(r) > mu.part(r))
    cols = _nonempty_columns(lam, mu)
    f_set = frozenset(i for i in cols if i + 1 in cols)
    e_set = frozenset(
        i for i in set(lam)
        if i not in cols and i + 1 not in cols
    )

    tilde = Partition(lam[1:])
    r_tilde = None
    if contains(mu, tilde):
        r_tilde = sum(
            1 for r in range(1, len(mu) + 1) if mu.part(r) > tilde.part(r)
        )
    return SkewStats(rows=rows, F_set=f_set, E_set=e_set, r_tilde=r_tilde)

def eta(lam: Partition, nu: Partition, base=None):
    """
    ``prod_j (q;q)_{nu_j-nu_{j+1}} / ((q;q)_{lam_j-nu_j} (q;q)_{nu_j-lam_{j+1}})``
    for a horizontal strip ``lam/nu``.
    """
    lam, nu = Partition(lam), Partition(nu)
    if not is_horizontal_strip(nu, lam):
        raise ValueError(f'{lam}/{nu} is not a horizontal strip')
    base = formal if base is None else base
    num, den = one_like(base), one_like(base)
    for j in range(1, len(lam) + 1):
        num = num * qpoch(base, nu.part(j) - nu.part(j + 1), base)
        den = den * qpoch(base, lam.part(j) - nu.part(j), base)
        den = den * qpoch(base, nu.part(j) - lam.part(j + 1), base)
    return num / den

d_whit = eta

def macd_box_weight(lam: Partition, i: int, j: int, qv, tv):
    """
    ``(1 - q^a t^(l+1)) / (1 - q^(a+1) t^l)`` at box ``(i, j)``; one outside
    ``lam``.
    """
    if j > lam.part(i):
        return one_like(qv, tv)
    a = lam.part(i) - j
    l = conjugate(lam).part(j) - i
    return (1 - qv**a * tv**(l + 1)) / (1 - qv**(a + 1) * tv**l)

def b_macdonald(lam: Partition, qv=None, tv=None):
    """Product of the box weights over every box of ``lam``."""
    from .scalars import mq, mt
    qv = mq if qv is None else qv
    tv = mt if tv is None else tv
    lam = Partition(lam)
    result = one_like(qv, tv)
    for i in range(1, len(lam) + 1):
        for j in range(1, lam.part(i) + 1):
            result = result * macd_box_weight(lam, i, j, qv, tv)
    return result

def _macd_ratio(lam, mu, qv, tv, rows_only):
    from .scalars import mq, mt
    qv = mq if qv is None else qv
    tv = mt if tv is None else tv
    lam, mu = Partition(lam), Partition(mu)
    if not is_horizontal_strip(mu, lam):
        raise ValueError(f'{lam}/{mu} is not a horizontal strip')
    cols = _nonempty_columns(lam, mu)
    result = one_like(qv, tv)
    for i in range(1, len(lam) + 1):
        row_hit = lam.part(i) > mu.part(i)
        for j in range(1, lam.part(i) + 1):
            if rows_only and row_hit and j not in cols:
                result = result * (
                    macd_box_weight(mu, i, j, qv, tv) /
                    macd_box_weight(lam, i, j, qv, tv)
                )
            elif not rows_only and j in cols:
                result = result * (
                    macd_box_weight(lam, i, j, qv, tv) /
                    macd_box_weight(mu, i, j, qv, tv)
                )
    return result

def psi_macdonald(lam: Partition, mu: Partition, qv=None, tv=None):
    """``psi_{lam/mu}``: ``b_mu/b_lam`` over boxes in touched rows, untouched columns."""
    return _macd_ratio(lam, mu, qv, tv, rows_only=True)

def psibar_macdonald(lam: Partition, mu: Partition, qv=None, tv=None):
    """``psibar_{lam/mu}``: ``b_lam/b_mu`` over boxes in touched columns."""
    return _macd_ratio(lam, mu, qv, tv, rows_only=False)

def partitions_of(n: int, max_part: int = None, max_length: int = None):
    """
    Partitions of ``n`` in reverse-lexicographic order.

    >>> [str(p) for p in partitions_of(3)]
    ['3', '2,1', '1,1,1']
    """
    if n < 0:
        return
    max_part = n if max_part is None else max_part
    if max_length is not None and max_length < 0:
        return
    if n == 0:
        yield EMPTY
        return
    if max_length == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        rest_len = None if max_length is None else max_length - 1
        for rest in partitions_of(n - first, first, rest_len):
            yield Partition((first,) + tuple(rest))

def partitions_up_to(n: int, max_part: int = None, max_length: int = None):
    """All partitions with ``|lam| <= n``, graded."""
    for size in range(n + 1):
        yield from partitions_of(size, max_part, max_length)

def partitions_in_box(rows: int, cols: int):
    """Partitions with at most ``rows`` parts, each at most ``cols``."""
    yield from partitions_up_to(rows * cols, max_part=cols, max_length=rows)

def subpartitions(lam: Partition):
    """All ``mu`` inside ``lam``, graded."""
    lam = Partition(lam)
    ranges = [range(p + 1) for p in lam]
    found = []
    for parts in product(*ranges):
        if all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1)):
            found.append(Partition(parts))
    yield from sorted(found, key=graded_key)

def strip_predecessors(lam: Partition, floor: Partition = None):
    """
    The ``nu`` with ``nu < lam`` (horizontal strip) and ``floor`` inside ``nu``.
    """
    lam = Partition(lam)
    floor = EMPTY if floor is None else Partition(floor)
    if not contains(lam, floor):
        return []
    ranges = []
    for r in range(1, len(lam) + 1):
        lo = max(lam.part(r + 1), floor.part(r))
        hi = lam.part(r)
        if lo > hi:
            return []
        ranges.append(range(lo, hi + 1))
    return [Partition(parts) for parts in product(*ranges)]

def strip_successors(
        nu: Partition,
        max_increment: int = None,
        cap: int = None,
        ceiling: Partition = None,
    ):
    """
    The ``lam`` with ``nu < lam``, bounded by the increment ``|lam/nu|``, the
    total size or a containing ``ceiling``. At least one bound is required
    since the first row may grow without limit.
    """
    nu = Partition(nu)
    if max_increment is None and cap is None and ceiling is None:
        raise ValueError(
            'strip_successors needs max_increment, cap or ceiling'
        )
    budget = []
    if max_increment is not None:
        budget.append(max_increment)
    if cap is not None:
        budget.append(cap - sum(nu))
    budget = min(budget) if budget else None
    if budget is not None and budget < 0:
        return []

    ranges = []
    for r in range(1, len(nu) + 2):
        lo = nu.part(r)
        if r > 1:
            hi = nu.part(r - 1)
        elif budget is not None:
            hi = lo + budget
        else:
            hi = ceiling.part(1)
        if ceiling is not None:
            hi = min(hi, ceiling.part(r))
        if lo > hi:
            return []
        ranges.append(range(lo, hi + 1))

    found = []
    for parts in product(*ranges):
        lam = Partition(parts)
        inc = sum(lam) - sum(nu)
        if budget is not None and inc > budget:
            continue
        if ceiling is not None and not contains(ceiling, lam):
            continue
        found.append(lam)
    return sorted(found, key=graded_key)

def vertical_successors(nu: Partition, cap: int = None, ceiling: Partition = None):
    """The ``lam`` with ``lam/nu`` a vertical strip, bounded as above."""
    nu_c = conjugate(Partition(nu))
    ceiling_c = None if ceiling is None else conjugate(Partition(ceiling))
    found = [
        conjugate(lam) for lam in
        strip_successors(nu_c, cap=cap, ceiling=ceiling_c)
    ]
    return sorted(found, key=graded_key)

def rook_successors(nu: Partition):
    """Nonempty rook strips ``lam/nu``."""
    nu = Partition(nu)
    found = []
    for bits in product((0, 1), repeat=len(nu) + 1):
        if not any(bits):
            continue
        parts = [nu.part(r) + bits[r - 1] for r in range(1, len(nu) + 2)]
        try:
            lam = Partition(parts)
        except ValueError:
            continue
        if is_rook_strip(nu, lam):
            found.append(lam)
    return sorted(found, key=graded_key)

def enumerate_partitions(kind: str, **bounds):
    """
    Enumerate partitions in graded reverse-lexicographic order.

    :param kind:    (str) One of ``size`` (``n``), ``up_to`` (``n``),
        ``box`` (``rows``, ``cols``), ``successors`` (``nu``, ``increment``)
        or ``subpartitions`` (``lam``).
    """
    if kind == 'size':
        return list(partitions_of(bounds['n']))
    if kind == 'up_to':
        return list(partitions_up_to(bounds['n']))
    if kind == 'box':
        return list(partitions_in_box(bounds['rows'], bounds['cols']))
    if kind == 'successors':
        return strip_successors(
            bounds.get('nu', EMPTY), max_increment=bounds['increment']
        )
    if kind == 'subpartitions':
        return list(subpartitions(bounds['lam']))
    raise ValueError(
        f'Unknown enumeration "{kind}" - must be one of '
        '("size","up_to","box","successors","subpartitions")'
    )
