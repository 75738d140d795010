__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import logging
import math
from functools import lru_cache

import numpy as np

from iqwhit.mixins import CoefficientsMixin, UIMixin
from iqwhit.utils import hash_id, logstream, numeric_defaults

from .families import one_var
from .partitions import EMPTY, Partition, b_hl, conjugate, strip_successors
from .scalars import qpoch_infinite
from .specializations import F_spec_union, SpecDesc, fold

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

ORIENTATIONS = ('proof', 'statement')

def _check_measure_spec(spec: SpecDesc):
    if spec.alphas and spec.alphas[0] >= 1:
        raise ValueError(
            f'Measures need alpha_1 < 1, got {spec.alphas[0]}'
        )
    if spec.q is None:
        raise ValueError('Measures need a numeric value for q')

def _float_spec(spec: SpecDesc) -> SpecDesc:
    return SpecDesc(
        tuple(float(a) for a in spec.alphas),
        tuple(float(b) for b in spec.betas),
        float(spec.gamma),
        float(spec.q),
    )

@lru_cache(maxsize=None)
def _b_conj(lam: Partition, qf: float) -> float:
    return float(b_hl(conjugate(lam), qf))

def partition_function(spec: SpecDesc, eps: float = None) -> float:
    """
    ``Z = 1 / prod_k (1 - phi_1 of the spec rescaled by q^k)``, stopping
    once the factor is within ``eps`` of one.
    """
    _check_measure_spec(spec)
    eps = numeric_defaults['product_eps'] if eps is None else eps
    spec = _float_spec(spec)
    inverse, k = 1.0, 0
    while True:
        phi1 = float(F_spec_union(spec.rescaled(spec.q**k), Partition((1,))))
        if abs(phi1) < eps:
            break
        inverse *= 1 - phi1
        k += 1
        if k > 10000:
            raise ValueError('Partition function product did not settle')
    return 1 / inverse

def z_closed_form(spec: SpecDesc) -> float:
    """
    ``prod 1/(alpha_i; q)_infinity * prod (1 + beta_i) * e^(gamma/(1-q))``.
    """
    _check_measure_spec(spec)
    qf = float(spec.q)
    value = 1.0
    for a in spec.alphas:
        value /= qpoch_infinite(float(a), qf)
    for b in spec.betas:
        value *= 1 + float(b)
    gamma = float(spec.gamma)
    if gamma:
        printed = math.exp(gamma * qf / (1 - qf))
        logger.info(
            f'Plancherel factor: product gives {math.exp(gamma / (1 - qf)):.12g}, '
            f'the printed form e^(gamma q/(1-q)) gives {printed:.12g}'
        )
    return value * math.exp(gamma / (1 - qf))

class MeasureTable(CoefficientsMixin, UIMixin):
    """
    Probabilities of the partitions ``lam`` containing ``mu`` with
    ``|lam| <= cap`` under the measure attached to a specialization.
    """

    def __init__(
            self,
            mu: Partition,
            spec: SpecDesc,
            entries: dict,
            Z: float,
            cap: int,
            orientation: str = 'proof',
        ):
        self._mu = Partition(mu)
        self._spec = spec
        self._coeffs = self._clean(entries)
        self._Z = Z
        self._cap = cap
        self._orientation = orientation
        self._tail_mass = 1.0 - sum(self._coeffs.values())

        self._id = f'measure-{hash_id(spec, mu, cap, orientation)}'
        self._meta = {
            'mu': str(self._mu),
            'cap': cap,
            'Z': Z,
            'tail_mass': self._tail_mass,
            'orientation': orientation,
        }

    def __str__(self):
        return f'<MeasureTable: {self._id} (mu: {self._mu}, cap: {self._cap})>'

    def _zero(self):
        return 0.0

    @property
    def mu(self) -> Partition:
        return self._mu

    @property
    def spec(self) -> SpecDesc:
        return self._spec

    @property
    def Z(self) -> float:
        return self._Z

    @property
    def cap(self) -> int:
        return self._cap

    @property
    def tail_mass(self) -> float:
        return self._tail_mass

    @property
    def total(self) -> float:
        return sum(self._coeffs.values())

    def mean_size(self) -> float:
        """Expected ``|lam|`` over the tabulated support."""
        return sum(sum(lam) * p for lam, p in self._coeffs.items())

    def total_variation(self, counts: dict) -> float:
        """
        Total variation distance to the empirical distribution of ``counts``
        (partition to number of samples).
        """
        n = sum(counts.values())
        if not n:
            raise ValueError('total_variation needs at least one sample')
        keys = set(self._coeffs) | {Partition(k) for k in counts}
        empirical = {Partition(k): v / n for k, v in counts.items()}
        return 0.5 * sum(
            abs(self._coeffs.get(k, 0.0) - empirical.get(k, 0.0)) for k in keys
        )

    def to_dict(self) -> dict:
        return {
            'mu': str(self._mu),
            'spec': self._spec.to_dict(),
            'cap': self._cap,
            'Z': self._Z,
            'tail_mass': self._tail_mass,
            'orientation': self._orientation,
            'entries': {str(lam): p for lam, p in self.items()},
        }

    def plot(self, path: str = None, by_size: bool = True):
        """
        Bar chart of the table, by ``|lam|`` or by partition. Saves to
        ``path`` when given and returns the figure.
        """
        import matplotlib
        matplotlib.use('Agg')
        import matplotlib.pyplot as plt

        if by_size:
            sizes = np.arange(self._cap + 1)
            mass = np.zeros(self._cap + 1)
            for lam, p in self._coeffs.items():
                mass[sum(lam)] += p
            labels, heights = sizes, mass
        else:
            labels = [str(lam) for lam in self.support]
            heights = np.array([self._coeffs[lam] for lam in self.support])

        fig = plt.figure(figsize=(8, 4))
        ax = fig.add_subplot(111)
        ax.bar(range(len(heights)), heights)
        ax.set_ylabel('probability')
        ax.set_xlabel('|lambda|' if by_size else 'lambda')
        if not by_size:
            plt.xticks(range(len(labels)), labels, rotation='vertical')
        ax.set_title(f'mu = {self._mu}, Z = {self._Z:.6g}')
        if path is not None:
            fig.savefig(path)
            logger.info(f'Saved measure plot to {path}')
        return fig

    def help(self):
        """Help method for this class"""
        print('MeasureTable Help:')
        print(' > table[lam] - Probability of a partition')
        print(' > table.mean_size() - Expected size over the table')
        print(' > table.total_variation() - Distance to sample counts')
        print(' > table.plot() - Bar chart (matplotlib)')
        print(' > table.to_dict() - JSON-ready form')
        super().help(additionals=['mu', 'Z', 'cap', 'tail_mass'])

def _weights(values: dict, mu: Partition, qf: float, orientation: str) -> dict:
    b_mu = _b_conj(mu, qf)
    if orientation == 'proof':
        return {lam: b_mu / _b_conj(lam, qf) * float(v) for lam, v in values.items()}
    return {lam: _b_conj(lam, qf) / b_mu * float(v) for lam, v in values.items()}

def measure_table(
        spec: SpecDesc,
        mu=EMPTY,
        cap: int = 20,
        eps: float = None,
        tail_bound: float = None,
        orientation: str = 'proof',
        cutoff: int = None,
    ) -> MeasureTable:
    """
    Tabulate ``P(lam) = (b_mu'/b_lam') phi(F_{lam/mu}) / Z`` over
    ``|lam| <= cap``.

    :param eps:         (float) Truncation of the product defining ``Z``.

    :param tail_bound:  (float) Largest accepted missing mass.

    :param orientation: (str) ``proof`` (``b_mu'/b_lam'``) or ``statement``
        (``b_lam'/b_mu'``).
    """
    _check_measure_spec(spec)
    if orientation not in ORIENTATIONS:
        raise ValueError(
            f'Unknown orientation "{orientation}" - must be one of {ORIENTATIONS}'
        )
    tail_bound = numeric_defaults['tail_bound'] if tail_bound is None else tail_bound
    mu = Partition(mu)
    fspec = _float_spec(spec)
    Z = partition_function(fspec, eps)

    values = fold(fspec, mu, cap=cap, cutoff=cutoff)
    entries = {
        lam: w / Z
        for lam, w in _weights(values, mu, fspec.q, orientation).items()
    }
    negative = [lam for lam, p in entries.items() if p < 0]
    if negative:
        logger.warning(f'{len(negative)} negative probabilities, e.g. {negative[0]}')

    table = MeasureTable(mu, spec, entries, Z, cap, orientation)
    if tail_bound is not None and table.tail_mass > tail_bound:
        raise ValueError(
            f'Missing mass {table.tail_mass:.3g} above the bound {tail_bound:.3g}; '
            'raise the cap'
        )
    return table

def normalization_orientation(spec: SpecDesc, mu=EMPTY, cap: int = 20) -> dict:
    """
    Totals of both normalizations and the one that sums to one.
    """
    totals = {
        o: measure_table(spec, mu, cap, orientation=o).total
        for o in ORIENTATIONS
    }
    best = min(totals, key=lambda o: abs(totals[o] - 1))
    logger.info(f'Normalization totals {totals}; {best} sums to one')
    return totals | {'normalized': best}

@lru_cache(maxsize=None)
def _step_distribution(nu: Partition, alpha: float, qf: float, eps: float,
                       budget: int) -> tuple:
    """
    Cumulative distribution of the next shape after one variable ``alpha``,
    by increasing size, cut once the remaining mass is below ``eps``.
    """
    scale = qpoch_infinite(alpha, qf)
    b_nu = _b_conj(nu, qf)
    shapes, cumulative, total, k = [], [], 0.0, 0
    while 1 - total >= eps:
        for rho in strip_successors(nu, max_increment=k):
            if sum(rho) - sum(nu) != k:
                continue
            p = scale * b_nu / _b_conj(rho, qf) * one_var('F', rho, nu)(alpha, qf)
            if p > 0:
                total += p
                shapes.append(rho)
                cumulative.append(total)
        k += 1
        if len(shapes) > budget or k > budget:
            raise ValueError(
                f'Sampler step from {nu} exceeded its budget of {budget} shapes'
            )
        if alpha == 0:
            break
    return tuple(shapes), np.array(cumulative)

def measure_sample(
        spec: SpecDesc,
        mu=EMPTY,
        rng=None,
        eps: float = None,
        budget: int = None,
    ) -> Partition:
    """
    Sample from the measure of a specialization with only ``alphas``, one
    horizontal strip per ``alpha``.

    :param rng:     (numpy.random.Generator or int) Generator or seed.
    """
    _check_measure_spec(spec)
    if spec.betas or spec.gamma:
        raise NotImplementedError('Sampling supports specializations with alphas only')
    eps = numeric_defaults['sampler_eps'] if eps is None else eps
    budget = numeric_defaults['sampler_budget'] if budget is None else budget
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    qf = float(spec.q)

    lam = Partition(mu)
    for alpha in spec.alphas:
        shapes, cumulative = _step_distribution(lam, float(alpha), qf, eps, budget)
        u = rng.random() * cumulative[-1]
        idx = min(int(np.searchsorted(cumulative, u, side='right')), len(shapes) - 1)
        lam = shapes[idx]
    return lam

def measure_samples(spec: SpecDesc, mu=EMPTY, n: int = 1, seed: int = None,
                    **kwargs) -> list:
    """``n`` independent samples from one seeded generator."""
    rng = np.random.default_rng(seed)
    return [measure_sample(spec, mu, rng, **kwargs) for _ in range(n)]
