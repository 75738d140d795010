__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import argparse
import json
import logging
import sys

import fsspec

from iqwhit.core.families import FAMILIES, eval_skew, expand_skew, mcoords
from iqwhit.core.measures import (
    ORIENTATIONS,
    measure_samples,
    measure_table,
    normalization_orientation,
    z_closed_form,
)
from iqwhit.core.partitions import parse_partition
from iqwhit.core.polyspace import format_monomial, monomial_key
from iqwhit.core.scalars import format_scalar, parse_scalar, substitute_q
from iqwhit.core.specializations import F_spec_union, SpecDesc
from iqwhit.core.structure import (
    ALGORITHMS,
    a_expand,
    b_expand,
    pieri_F,
    pieri_W,
    product_F,
    skew_F_expand,
)
from iqwhit.engine.golden import golden_suite
from iqwhit.engine.verify import (
    DUAL_READINGS,
    VERIFIERS,
    dual_cauchy_readings,
    verify,
)
from iqwhit.utils import logstream, set_verbose

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

def _scalars(text: str) -> tuple:
    """Comma-separated scalars; empty text gives no values."""
    if not text:
        return ()
    return tuple(parse_scalar(t) for t in text.split(',') if t.strip())

def _q(args):
    return None if args.q is None else parse_scalar(args.q)

def _coefficient(c, qval):
    if qval is None:
        return format_scalar(c)
    return format_scalar(substitute_q(c, qval))

def _poly_terms(f, qval=None) -> dict:
    names = [str(s) for s in f.ring.symbols]
    return {
        format_monomial(exp, names): _coefficient(f[exp], qval)
        for exp in sorted(f.keys(), key=monomial_key)
    }

def _expansion_payload(expansion, qval=None) -> dict:
    if qval is not None:
        expansion = expansion.map_coefficients(lambda c: substitute_q(c, qval))
    return expansion.to_dict()

def _text(payload: dict) -> str:
    lines = []
    for k, v in payload.items():
        if isinstance(v, dict):
            lines.append(f'{k}:')
            lines += [f'  {a}: {b}' for a, b in v.items()]
        else:
            lines.append(f'{k}: {v}')
    return '\n'.join(lines)

def _emit(args, payload, text: str = None):
    """Write the result as JSON or text, to ``--output`` when given."""
    if args.json:
        text = json.dumps(payload, indent=2)
    elif text is None:
        text = _text(payload)
    if args.output:
        with fsspec.open(args.output, 'w') as f:
            f.write(text + '\n')
        logger.info(f'Wrote output to {args.output}')
    else:
        print(text)

def _spec(args) -> SpecDesc:
    return SpecDesc(
        alphas=_scalars(args.alphas),
        betas=_scalars(args.betas),
        gamma=parse_scalar(args.gamma) if args.gamma else 0,
        q=_q(args),
    )

# Subcommands.

def _poly(args) -> int:
    lam, mu = parse_partition(args.lam), parse_partition(args.mu)
    qval = _q(args)
    payload = {
        'family': args.family, 'lambda': str(lam), 'mu': str(mu), 'n': args.n,
    }
    if args.action == 'eval':
        values = _scalars(args.x)
        if len(values) != args.n:
            raise ValueError(f'--x needs {args.n} values, got {len(values)}')
        value = eval_skew(args.family, lam, mu, values, qval)
        payload['x'] = [str(v) for v in values]
        payload['value'] = format_scalar(value)
        _emit(args, payload)
        return EXIT_OK

    if args.basis == 'm':
        coords = mcoords(args.family, lam, mu, args.n, D=args.deg)
        payload['basis'] = 'm'
        payload['terms'] = {str(k): _coefficient(v, qval) for k, v in coords.items()}
        _emit(args, payload)
        return EXIT_OK

    value = expand_skew(args.family, lam, mu, args.n)
    if args.family == 'J':
        payload['poles'] = list(value.poles)
        if args.deg is not None:
            payload['series_degree'] = args.deg
            value = value.series(args.deg, total=True)
        else:
            value = value.numer
    payload['terms'] = _poly_terms(value, qval)
    _emit(args, payload)
    return EXIT_OK

def _product(args) -> int:
    mu, nu = parse_partition(args.mu), parse_partition(args.nu)
    qval = _q(args)
    algos = ALGORITHMS if args.algo == 'both' else (args.algo,)
    results = {a: product_F(mu, nu, algorithm=a) for a in algos}
    payload = {'mu': str(mu), 'nu': str(nu)}
    for a, expansion in results.items():
        payload[a] = _expansion_payload(expansion, qval)
    if args.algo == 'both':
        agree = results['dual'] == results['direct']
        payload['algorithms_agree'] = agree
        _emit(args, payload)
        return EXIT_OK if agree else EXIT_FAIL
    _emit(args, payload)
    return EXIT_OK

def _pieri(args) -> int:
    nu = parse_partition(args.nu)
    if args.kind == 'F':
        expansion = pieri_F(nu)
    else:
        expansion = pieri_W(args.i, nu)
    payload = {'kind': args.kind, 'nu': str(nu)} | _expansion_payload(expansion, _q(args))
    _emit(args, payload)
    return EXIT_OK

def _skew_expand(args) -> int:
    lam, mu = parse_partition(args.lam), parse_partition(args.mu)
    expansion = skew_F_expand(lam, mu, algorithm=args.algo)
    payload = {'lambda': str(lam), 'mu': str(mu), 'algorithm': args.algo}
    _emit(args, payload | _expansion_payload(expansion, _q(args)))
    return EXIT_OK

def _basis(args) -> int:
    lam = parse_partition(args.lam)
    fn = a_expand if args.direction == 'a' else b_expand
    expansion = fn(lam, args.deg)
    payload = {'lambda': str(lam), 'direction': args.direction, 'D': args.deg}
    _emit(args, payload | _expansion_payload(expansion, _q(args)))
    return EXIT_OK

def _verify_params(args) -> dict:
    identity = args.identity
    if identity == 'littlewood':
        params = {
            'values': [float(v) for v in _scalars(args.x)],
            'mu': parse_partition(args.mu),
            'cap': args.cap,
        }
        if args.q is not None:
            params['q_value'] = float(parse_scalar(args.q))
        return params
    if identity == 'macd-cauchy':
        return {'D': args.deg, 'n': args.n or 2, 'm': args.m or 2,
                'collapse': args.collapse}
    if identity in ('omega-F', 'omega-W'):
        params = {'lam': parse_partition(args.lam), 'mu': parse_partition(args.mu)}
        if identity == 'omega-F':
            params['D'] = args.deg
        return params
    params = {
        'mu': parse_partition(args.mu), 'nu': parse_partition(args.nu),
        'D': args.deg,
    }
    if args.n:
        params['n'] = args.n
    if args.m:
        params['m'] = args.m
    if identity == 'dual-cauchy':
        params['reading'] = args.reading
    return params

def _verify(args) -> int:
    if args.identity == 'golden':
        report = golden_suite()
        _emit(args, report.to_dict(), None if args.json else _golden_text(report))
        return EXIT_OK if report.passed else EXIT_FAIL

    params = _verify_params(args)
    if args.identity == 'dual-cauchy' and args.reading == 'both':
        params.pop('reading')
        reports = dual_cauchy_readings(**params)
        payload = {r: rep.to_dict() for r, rep in reports.items()}
        _emit(args, payload)
        return EXIT_OK if any(rep.passed for rep in reports.values()) else EXIT_FAIL

    report = verify(args.identity, **params)
    payload = report.to_dict()
    _emit(args, payload)
    if not report.passed:
        print(f'Verification failed: {report.witness}', file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK

def _golden_text(report) -> str:
    lines = [str(report)]
    for name, rep in report:
        mark = rep.status if rep.passed else f'fail ({rep.witness})'
        lines.append(f' - {name}: {mark}')
    return '\n'.join(lines)

def _spec_eval(args) -> int:
    spec = _spec(args)
    lam, mu = parse_partition(args.lam), parse_partition(args.mu)
    value = F_spec_union(spec, lam, mu, cutoff=args.cutoff)
    payload = {
        'spec': spec.to_dict(), 'lambda': str(lam), 'mu': str(mu),
        'value': format_scalar(value),
    }
    _emit(args, payload)
    return EXIT_OK

def _measure(args) -> int:
    spec = _spec(args)
    mu = parse_partition(args.mu)
    if args.action == 'sample':
        samples = measure_samples(spec, mu, n=args.n, seed=args.seed)
        if args.json:
            _emit(args, [str(s) for s in samples])
        else:
            _emit(args, None, '\n'.join(str(s) for s in samples))
        return EXIT_OK

    if args.orientation == 'both':
        payload = normalization_orientation(spec, mu, args.cap)
        _emit(args, payload)
        return EXIT_OK

    table = measure_table(
        spec, mu, cap=args.cap, tail_bound=args.tail_bound,
        orientation=args.orientation,
    )
    if args.plot:
        table.plot(args.plot)
    payload = table.to_dict()
    payload['Z_closed_form'] = z_closed_form(spec)
    _emit(args, payload)
    return EXIT_OK

# Parser.

def _add_common(p):
    p.add_argument('--q', default=None,
                   help='Value of q: "p/q" for exact, a decimal for numeric.')
    p.add_argument('--json', action='store_true', help='Write JSON output.')
    p.add_argument('--output', default=None,
                   help='Write output to this path or URL instead of stdout.')
    p.add_argument('-v', '--verbose', action='count', default=0,
                   help='Increase logging (repeat for debug).')

def _add_spec(p):
    p.add_argument('--alphas', default='', help='Comma-separated alphas.')
    p.add_argument('--betas', default='', help='Comma-separated betas.')
    p.add_argument('--gamma', default='', help='Plancherel parameter.')

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='iqwhit',
        description='Inhomogeneous q-Whittaker polynomials: expansions, '
                    'identities, specializations and partition measures.',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    poly = sub.add_parser('poly', help='Expand or evaluate a skew polynomial.')
    poly.add_argument('action', choices=['expand', 'eval'])
    poly.add_argument('--family', choices=FAMILIES, default='F')
    poly.add_argument('--lambda', dest='lam', required=True)
    poly.add_argument('--mu', default='')
    poly.add_argument('--n', type=int, default=2, help='Number of variables.')
    poly.add_argument('--x', default='', help='Comma-separated values for eval.')
    poly.add_argument('--basis', choices=['x', 'm'], default='x',
                      help='Monomials in x or monomial symmetric coordinates.')
    poly.add_argument('--deg', type=int, default=None,
                      help='Degree cap (series degree for J).')
    _add_common(poly)
    poly.set_defaults(func=_poly)

    product = sub.add_parser('product', help='Expand F_mu F_nu in the F basis.')
    product.add_argument('--mu', required=True)
    product.add_argument('--nu', required=True)
    product.add_argument('--algo', choices=ALGORITHMS + ('both',), default='dual')
    _add_common(product)
    product.set_defaults(func=_product)

    pieri = sub.add_parser('pieri', help='One-box (F) or one-row (W) product rule.')
    pieri.add_argument('--nu', required=True)
    pieri.add_argument('--kind', choices=['F', 'W'], default='F')
    pieri.add_argument('--i', type=int, default=1, help='Row length for W.')
    _add_common(pieri)
    pieri.set_defaults(func=_pieri)

    skew = sub.add_parser('skew-expand', help='Expand F_{lam/mu} in the F basis.')
    skew.add_argument('--lambda', dest='lam', required=True)
    skew.add_argument('--mu', default='')
    skew.add_argument('--algo', choices=ALGORITHMS, default='dual')
    _add_common(skew)
    skew.set_defaults(func=_skew_expand)

    basis = sub.add_parser('basis', help='Change of basis between W and F.')
    basis.add_argument('--lambda', dest='lam', required=True)
    basis.add_argument('--deg', type=int, required=True)
    basis.add_argument('--direction', choices=['a', 'b'], default='a',
                       help='a: W in terms of F; b: F in terms of W.')
    _add_common(basis)
    basis.set_defaults(func=_basis)

    ver = sub.add_parser('verify', help='Check an identity or run the golden suite.')
    ver.add_argument('identity', choices=tuple(VERIFIERS) + ('golden',))
    ver.add_argument('--mu', default='')
    ver.add_argument('--nu', default='')
    ver.add_argument('--lambda', dest='lam', default='')
    ver.add_argument('--n', type=int, default=None)
    ver.add_argument('--m', type=int, default=None)
    ver.add_argument('--deg', type=int, default=None, help='Truncation degree.')
    ver.add_argument('--reading', choices=DUAL_READINGS + ('both',),
                     default='independent')
    ver.add_argument('--collapse', choices=['t=q', 't=0'], default=None)
    ver.add_argument('--x', default='', help='Values for the Littlewood check.')
    ver.add_argument('--cap', type=int, default=30)
    _add_common(ver)
    ver.set_defaults(func=_verify)

    spec = sub.add_parser('spec', help='Evaluate a specialization.')
    spec.add_argument('action', choices=['eval'])
    spec.add_argument('--lambda', dest='lam', required=True)
    spec.add_argument('--mu', default='')
    spec.add_argument('--cutoff', type=int, default=None,
                      help='Terms of the Plancherel series.')
    _add_spec(spec)
    _add_common(spec)
    spec.set_defaults(func=_spec_eval)

    measure = sub.add_parser('measure', help='Tabulate or sample a partition measure.')
    measure.add_argument('action', choices=['table', 'sample'])
    measure.add_argument('--mu', default='')
    measure.add_argument('--cap', type=int, default=20)
    measure.add_argument('--tail-bound', type=float, default=None)
    measure.add_argument('--orientation', choices=ORIENTATIONS + ('both',),
                         default='proof')
    measure.add_argument('--plot', default=None, help='Save a bar chart here.')
    measure.add_argument('--n', type=int, default=1, help='Number of samples.')
    measure.add_argument('--seed', type=int, default=None)
    _add_spec(measure)
    _add_common(measure)
    measure.set_defaults(func=_measure)

    return parser

def main(argv: list = None) -> int:
    """
    Entry point of the ``iqwhit`` command. Returns 0 on success, 1 when a
    requested check fails and 2 on bad input.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_OK if err.code == 0 else EXIT_USAGE
    set_verbose(args.verbose)
    try:
        return args.func(args)
    except (ValueError, NotImplementedError) as err:
        print(f'Error: {err}', file=sys.stderr)
        return EXIT_USAGE

if __name__ == '__main__':
    sys.exit(main())
