__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import logging
from functools import lru_cache

from iqwhit.engine.pool import run_cases
from iqwhit.utils import logstream

from .families import expand_skew, mcoords
from .partitions import (
    EMPTY,
    Partition,
    b_hl,
    conjugate,
    contains,
    eta,
    partitions_in_box,
    rook_successors,
    strip_successors,
    subpartitions,
)
from .polyspace import Expansion, SymFuncTrunc
from .polyspace import mcoords as poly_mcoords
from .scalars import RatQ, q

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

ALGORITHMS = ('dual', 'direct')

@lru_cache(maxsize=None)
def _basis_coords(family: str, kappa: Partition, n: int, D: int = None) -> dict:
    return mcoords(family, kappa, EMPTY, n, D=D)

@lru_cache(maxsize=None)
def _top_coords(family: str, kappa: Partition, n: int) -> dict:
    d = sum(kappa)
    return {
        k: v for k, v in _basis_coords(family, kappa, n, d).items()
        if sum(k) == d
    }

def _subtract(residual: dict, coords: dict, c):
    for k, v in coords.items():
        value = residual.get(k, 0) - c * v
        if value:
            residual[k] = value
        else:
            residual.pop(k, None)

def expand_homogeneous(coords: dict, n: int, family: str = 'W') -> dict:
    """
    Coefficients of a homogeneous symmetric polynomial, given by monomial
    coordinates in ``n`` variables, against the degree-``|kappa|`` components
    of the basis ``family``, by elimination from the lexicographically largest
    monomial. For ``W`` and ``HLQ`` this is the plain basis expansion.
    """
    residual = {Partition(k): v for k, v in coords.items() if v}
    degrees = {sum(k) for k in residual}
    if len(degrees) > 1:
        raise ValueError(
            f'Expected a homogeneous input, found degrees {sorted(degrees)}'
        )
    result = {}
    while residual:
        kappa = max(residual, key=tuple)
        if len(kappa) > n:
            raise RuntimeError(
                f'Monomial {kappa} has more parts than the {n} variables'
            )
        lead_coords = _top_coords(family, kappa, n)
        lead = lead_coords.get(kappa)
        if not lead:
            raise RuntimeError(
                f'{family}_{kappa} has no leading monomial m_{kappa}'
            )
        c = residual[kappa] / lead
        result[kappa] = c
        _subtract(residual, lead_coords, c)
        if kappa in residual:
            raise RuntimeError(
                f'Elimination did not clear m_{kappa} - basis not unitriangular'
            )
    return result

def w_expand_homogeneous(f: SymFuncTrunc) -> Expansion:
    """
    Expansion of a homogeneous truncated symmetric function in the
    q-Whittaker basis.
    """
    coeffs = f.to_basis('m').coefficients
    if not coeffs:
        return Expansion('W', {})
    degrees = {sum(k) for k in coeffs}
    if len(degrees) > 1:
        raise ValueError(
            f'w_expand_homogeneous needs a homogeneous input, found degrees '
            f'{sorted(degrees)}'
        )
    d = degrees.pop()
    return Expansion('W', expand_homogeneous(coeffs, max(d, 1), 'W'))

def eliminate(
        coords: dict,
        family: str,
        n: int,
        direction: str,
        D: int = None,
        stop: int = None,
        box: tuple = None,
    ) -> dict:
    """
    Expand a symmetric polynomial, given by monomial coordinates in ``n``
    variables, in the inhomogeneous basis ``family``. ``up`` peels off the
    lowest-degree component first (``F``), ``down`` the highest (``Ftilde``,
    ``j``).

    :param D:       (int) Ignore coordinates above this degree.

    :param stop:    (int) Stop once the current degree passes this one.

    :param box:     (tuple) ``(rows, cols)`` every basis element must fit in.
    """
    residual = {
        Partition(k): v for k, v in coords.items()
        if v and (D is None or sum(k) <= D)
    }
    result = {}
    pick = min if direction == 'up' else max
    while residual:
        d = pick(sum(k) for k in residual)
        if stop is not None and (
            (direction == 'up' and d > stop) or
            (direction == 'down' and d < stop)):
            break
        component = {k: v for k, v in residual.items() if sum(k) == d}
        # read against each element's own degree-|kappa| part
        for kappa, c in expand_homogeneous(component, n, family).items():
            if box is not None and (len(kappa) > box[0] or kappa.part(1) > box[1]):
                raise RuntimeError(
                    f'{family}_{kappa} lies outside the support box {box}'
                )
            result[kappa] = result.get(kappa, 0) + c
            _subtract(residual, _basis_coords(family, kappa, n, D), c)
        if any(sum(k) == d for k in residual):
            raise RuntimeError(
                f'Degree {d} component survived elimination in the {family} basis'
            )
    return {k: v for k, v in result.items() if v}

def _product_box(mu: Partition, nu: Partition) -> tuple:
    return len(mu) + len(nu), mu.part(1) + nu.part(1)

def _product_direct(mu: Partition, nu: Partition) -> dict:
    n = max(1, len(mu) + len(nu))
    product = expand_skew('F', mu, EMPTY, n) * expand_skew('F', nu, EMPTY, n)
    return eliminate(
        poly_mcoords(product), 'F', n, 'up', box=_product_box(mu, nu)
    )

def _dual_coefficient(case: tuple):
    lam, mu, nu = case
    # Ftilde_kappa vanishes in m variables once l(kappa) > m, and the remaining
    # ones are independent, so l(mu) variables fix the coefficient at mu
    m = max(1, len(mu))
    coords = mcoords('Ftilde', lam, nu, m)
    if not coords:
        return 0
    coeffs = eliminate(coords, 'Ftilde', m, 'down', stop=sum(mu))
    return coeffs.get(mu, 0)

def _product_dual(mu: Partition, nu: Partition) -> dict:
    rows, cols = _product_box(mu, nu)
    cases = {
        lam: (lam, mu, nu)
        for lam in partitions_in_box(rows, cols)
        if sum(lam) >= sum(mu) + sum(nu)
        and contains(lam, mu) and contains(lam, nu)
    }
    found = run_cases(_dual_coefficient, cases)
    return {lam: c for lam, c in found.items() if c}

@lru_cache(maxsize=None)
def _product(mu: Partition, nu: Partition, algorithm: str) -> dict:
    if algorithm == 'dual':
        return _product_dual(mu, nu)
    return _product_direct(mu, nu)

def product_F(mu, nu, algorithm: str = 'dual') -> Expansion:
    """
    Finite expansion ``F_mu F_nu = sum c^lam_{mu,nu} F_lam``.

    :param mu:          (Partition) First factor.

    :param nu:          (Partition) Second factor.

    :param algorithm:   (str) ``dual`` reads each coefficient from an
        interpolation expansion, ``direct`` eliminates the expanded product.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(
            f'Unknown algorithm "{algorithm}" - must be one of {ALGORITHMS}'
        )
    mu, nu = Partition(mu), Partition(nu)
    coeffs = _product(mu, nu, algorithm)
    logger.debug(f'F_{mu} * F_{nu}: {len(coeffs)} terms ({algorithm})')
    return Expansion('F', coeffs, meta={'algorithm': algorithm})

def pieri_F(nu) -> Expansion:
    """
    ``F_1 F_nu`` over the rook strips ``lam/nu``, each with coefficient
    ``(-1)^(|lam/nu|-1) eta_{lam/nu} (1-q)^|lam/nu|``.
    """
    nu = Partition(nu)
    coeffs = {}
    for lam in rook_successors(nu):
        k = sum(lam) - sum(nu)
        coeffs[lam] = (-1)**(k - 1) * eta(lam, nu) * (1 - q)**k
    return Expansion('F', coeffs)

def pieri_W(i: int, nu) -> Expansion:
    """
    ``W_i W_nu / (q;q)_i = sum d_{lam/nu} W_lam`` over horizontal strips of
    size ``i``.
    """
    if i < 0:
        raise ValueError(f'pieri_W needs i >= 0, got {i}')
    nu = Partition(nu)
    coeffs = {
        lam: eta(lam, nu)
        for lam in strip_successors(nu, max_increment=i)
        if sum(lam) - sum(nu) == i
    }
    return Expansion('W', coeffs)

def pieri_power(n: int) -> Expansion:
    """``W_1^n`` in the q-Whittaker basis, by iterating the one-box rule."""
    if n < 0:
        raise ValueError(f'pieri_power needs n >= 0, got {n}')
    current = {EMPTY: RatQ.one}
    for _ in range(n):
        nxt = {}
        for nu, c in current.items():
            for lam, d in pieri_W(1, nu).items():
                nxt[lam] = nxt.get(lam, 0) + c * d * (1 - q)
        current = nxt
    return Expansion('W', current)

@lru_cache(maxsize=None)
def _product_j(mu: Partition, nu: Partition) -> dict:
    n = max(1, sum(mu) + sum(nu))
    product = expand_skew('j', mu, EMPTY, n) * expand_skew('j', nu, EMPTY, n)
    return eliminate(poly_mcoords(product), 'j', n, 'down')

def product_j(mu, nu) -> Expansion:
    """
    Finite expansion ``j_mu j_nu = sum d^lam_{mu,nu} j_lam``; the top-degree
    component of ``j_lam`` is the Hall-Littlewood ``Q_lam``, so elimination
    runs from the highest degree down.
    """
    return Expansion('j', _product_j(Partition(mu), Partition(nu)))

def _skew_dual(lam: Partition, mu: Partition) -> dict:
    lam_c, mu_c = conjugate(lam), conjugate(mu)
    coeffs = {}
    for nu in subpartitions(lam):
        if sum(nu) < sum(lam) - sum(mu):
            continue
        nu_c = conjugate(nu)
        d = _product_j(mu_c, nu_c).get(lam_c)
        if not d:
            continue
        coeffs[nu] = b_hl(lam_c) / (b_hl(mu_c) * b_hl(nu_c)) * d
    return coeffs

def _skew_direct(lam: Partition, mu: Partition) -> dict:
    n = max(1, len(lam))
    return eliminate(mcoords('F', lam, mu, n), 'F', n, 'up')

def skew_F_expand(lam, mu, algorithm: str = 'dual') -> Expansion:
    """
    ``F_{lam/mu} = sum_nu b_lam'/(b_mu' b_nu') d^lam'_{mu',nu'} F_nu`` with the
    ``d`` read from :func:`product_j`; ``direct`` eliminates the expanded skew
    polynomial instead.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(
            f'Unknown algorithm "{algorithm}" - must be one of {ALGORITHMS}'
        )
    lam, mu = Partition(lam), Partition(mu)
    if not contains(lam, mu):
        raise ValueError(f'skew_F_expand needs {mu} inside {lam}')
    if algorithm == 'dual':
        coeffs = _skew_dual(lam, mu)
    else:
        coeffs = _skew_direct(lam, mu)
    return Expansion('F', coeffs, meta={'algorithm': algorithm})

def _check_degree(lam: Partition, D: int, name: str):
    if D < sum(lam):
        raise ValueError(
            f'{name} needs D >= |lam| = {sum(lam)}, got {D}'
        )

def a_expand(lam, D: int) -> Expansion:
    """
    ``W_lam = sum a_{lam,mu} F_mu`` for ``|mu| <= D``, lowest degree first, in
    ``D`` variables.
    """
    lam = Partition(lam)
    _check_degree(lam, D, 'a_expand')
    n = max(D, 1)
    coeffs = eliminate(_basis_coords('W', lam, n, D), 'F', n, 'up', D=D)
    return Expansion('F', coeffs, truncation=D)

def b_expand(lam, D: int) -> Expansion:
    """``F_lam = sum b_{lam,mu} W_mu`` for ``|mu| <= D``."""
    lam = Partition(lam)
    _check_degree(lam, D, 'b_expand')
    n = max(D, 1)
    coords = _basis_coords('F', lam, n, D)
    coeffs = {}
    for d in sorted({sum(k) for k in coords}):
        component = {k: v for k, v in coords.items() if sum(k) == d}
        coeffs.update(expand_homogeneous(component, n, 'W'))
    return Expansion('W', coeffs, truncation=D)

def hlq_expand(lam, n: int = None) -> Expansion:
    """
    ``j_lam`` in the Hall-Littlewood ``Q`` basis, from the top degree down,
    read in ``n`` variables (``|lam|`` by default).
    """
    lam = Partition(lam)
    n = max(1, sum(lam)) if n is None else n
    if n < len(lam):
        raise ValueError(f'hlq_expand needs n >= {len(lam)} for {lam}, got {n}')
    coeffs = eliminate(mcoords('j', lam, EMPTY, n), 'HLQ', n, 'down')
    return Expansion('HLQ', coeffs, meta={'variables': n})
