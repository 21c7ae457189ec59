# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 18:20:13 2026

Command-line surface: bound rows, M sweeps, saturation estimates, instance
dumps and the property suites.
"""

import argparse
import csv
import json
import logging
import sys

from model import CCBoundError, SystemParams, cache_value
from labeling import inequality_of, permute_users, run_labeling
from saturation import build_saturating_instance, estimate, reuse_files
from bounds import (CSV_HEADER, SearchConfig, cdb_bound, cutset_bound, han_bound, proposed_bound,
                    record_at, sweep, sweep_grid)
from variants import (MultiRequestParams, d2d_bound, multirequest_achievable, multirequest_bound,
                      multirequest_gap)
from diagnostics import run_suites, verifyConfig
from Misc.instanceIO import from_json, to_dot, to_json
from Misc.misc import getPermfromStr, getRangefromStr, getRationalfromStr
from Misc.rational import render

logger = logging.getLogger(__name__)


class exitCodes:
    # 0: Success
    ok = 0
    # 1: A verified property failed
    propertyFailure = 1
    # 2: Bad flags or unparseable values
    usage = 2
    # 3: Values outside the domain, refused or infeasible computations
    domain = 3
    # 4: A file could not be read or written
    io = 4


# Function converts a command-line string into an exact rational for argparse
def rational_arg(text):
    value, errorCode = getRationalfromStr(text)
    if errorCode != 0:
        raise argparse.ArgumentTypeError('%r is not a rational number (use p/q or a decimal)' % text)
    return value


# Function converts "2-32" (or "7") into an inclusive (N, K) range for argparse
def pair_range(text):
    start, end, errorCode = getRangefromStr(text)
    if errorCode != 0 or start < 1:
        raise argparse.ArgumentTypeError('%r is not a range of positive integers such as 2-32' % text)
    return (start, end)


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError('%r is not an integer' % text)
    if value < 1:
        raise argparse.ArgumentTypeError('%r must be a positive integer' % text)
    return value


def _search_from(args):
    return SearchConfig(alpha_max=args.alpha_max, beta_max=args.beta_max,
                        full_split_enumeration=args.full_splits,
                        include_cutset_pairs=not args.no_cutset_pairs)


##################################################################################
# COMMANDS
##################################################################################
def cmd_rate(args):
    params = SystemParams(args.files, args.users)
    M = cache_value(params, args.cache)
    search = _search_from(args)

    if args.method == 'all':
        record = record_at(params, M, search)
        _, ineq = proposed_bound(params, M, search)
        if args.json:
            document = record.as_dict(args.decimal)
            document['inequality'] = str(ineq)
            print(json.dumps(document, sort_keys=True))
        else:
            print(','.join(CSV_HEADER))
            print(','.join(record.row(args.decimal)))
        logger.info('best inequality: %s (%s)', ineq, ineq.provenance.value)
        return exitCodes.ok

    if args.method == 'proposed':
        value, ineq = proposed_bound(params, M, search)
    else:
        value = {'cutset': cutset_bound, 'han': han_bound, 'cdb': cdb_bound}[args.method](params, M)
        ineq = None
    if args.json:
        document = {'M': render(M, args.decimal), 'LB_' + args.method: render(value, args.decimal)}
        if ineq is not None:
            document['inequality'] = str(ineq)
        print(json.dumps(document, sort_keys=True))
    else:
        print('LB_%s=%s' % (args.method, render(value, args.decimal)))
        if ineq is not None:
            print('inequality: %s' % ineq)
    return exitCodes.ok


def cmd_sweep(args):
    params = SystemParams(args.files, args.users)
    records = sweep(params, sweep_grid(params, args.points), _search_from(args))
    rows = [CSV_HEADER] + [record.row(args.decimal) for record in records]
    if args.out == '-':
        csv.writer(sys.stdout, lineterminator='\n').writerows(rows)
        return exitCodes.ok
    try:
        with open(args.out, 'w', newline='') as handle:
            csv.writer(handle, lineterminator='\n').writerows(rows)
    except OSError as err:
        print('error: cannot write %s: %s' % (args.out, err), file=sys.stderr)
        return exitCodes.io
    logger.info('wrote %d rows to %s', len(records), args.out)
    return exitCodes.ok


def cmd_nsat(args):
    found = estimate(args.alpha, args.beta, args.users, exact=args.exact)
    print('alpha=%d beta=%d K=%d' % (found.alpha, found.beta, found.users))
    print('upper_construction=%d' % found.upper_construction)
    print('upper_analytic=%s' % ('-' if found.upper_analytic is None else found.upper_analytic))
    print('upper_trivial=%d' % found.upper_trivial)
    print('upper_cdb=%s' % ('-' if found.upper_cdb is None else found.upper_cdb))
    if found.exact is not None:
        print('exact=%d' % found.exact)
    return exitCodes.ok


def cmd_instance(args):
    if args.input:
        try:
            with open(args.input) as handle:
                instance = from_json(handle.read())
        except OSError as err:
            print('error: cannot read %s: %s' % (args.input, err), file=sys.stderr)
            return exitCodes.io
    else:
        if args.alpha is None or args.beta is None or args.users is None:
            print('error: --alpha, --beta and --users are required without --input', file=sys.stderr)
            return exitCodes.usage
        instance = build_saturating_instance(args.alpha, args.beta, args.users)
        if not args.raw:
            instance = reuse_files(instance)

    if args.perm:
        perm, errorCode = getPermfromStr(args.perm, instance.params.num_users)
        if errorCode != 0:
            print('error: --perm must list a permutation of 1..%d' % instance.params.num_users,
                  file=sys.stderr)
            return exitCodes.usage
        instance = permute_users(instance, perm)

    result = run_labeling(instance)
    logger.info('L=%d over N=%d files, %s', result.lower_bound, instance.params.num_files,
                inequality_of(instance) if instance.alpha and instance.beta else 'degenerate')
    if args.format == 'dot':
        sys.stdout.write(to_dot(instance, result))
    else:
        sys.stdout.write(to_json(instance))
    return exitCodes.ok


def cmd_verify(args):
    if args.trials < 1:
        print('error: --trials must be at least 1', file=sys.stderr)
        return exitCodes.usage
    names = verifyConfig.suites if args.suite == 'all' else (args.suite,)
    status = exitCodes.ok
    for result in run_suites(names, args.seed, args.trials, args.pairs):
        if result.passed:
            print('%s: pass (%d checks)' % (result.name, result.checked))
            continue
        status = exitCodes.propertyFailure
        print('%s: FAIL (%d of %d checks)' % (result.name, len(result.failures), result.checked))
        for message, instance in result.failures:
            print('  ' + message)
            if instance is not None:
                print(instance, end='')
    return status


def cmd_mrate(args):
    params = SystemParams(args.files, args.users)
    M = cache_value(params, args.cache)
    search = _search_from(args)
    if args.d2d:
        if args.requests_per_user != 1:
            print('error: --d2d takes a single request per user', file=sys.stderr)
            return exitCodes.usage
        record = record_at(params, M, search, lb_proposed=d2d_bound(params, M, search))
        print(','.join(CSV_HEADER))
        print(','.join(record.row(args.decimal)))
        return exitCodes.ok

    mr_params = MultiRequestParams(params, args.requests_per_user)
    rate = multirequest_achievable(mr_params, M)
    bound = multirequest_bound(mr_params, M, search)
    ratio = multirequest_gap(mr_params, M, search)
    print('M,l,R_achievable,LB_multirequest,gap')
    print(','.join([render(M, args.decimal), str(args.requests_per_user),
                    render(rate, args.decimal), render(bound, args.decimal), render(ratio, args.decimal)]))
    return exitCodes.ok


##################################################################################
# PARSER
##################################################################################
def build_parser():
    parser = argparse.ArgumentParser(prog='ccbound',
                                     description='Lower bounds on the coded caching rate R*(M).')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for per-node detail (stderr)')
    parser.add_argument('--decimal', action='store_true',
                        help='render rationals with 12 significant digits')
    commands = parser.add_subparsers(dest='command', required=True)

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument('--alpha-max', type=positive_int, default=None)
    search.add_argument('--beta-max', type=positive_int, default=None)
    search.add_argument('--full-splits', action='store_true',
                        help='try every split instead of the balanced one')
    search.add_argument('--no-cutset-pairs', action='store_true')

    system = argparse.ArgumentParser(add_help=False)
    system.add_argument('--files', type=positive_int, required=True)
    system.add_argument('--users', type=positive_int, required=True)

    rate = commands.add_parser('rate', parents=[system, search], help='bounds at one cache size')
    rate.add_argument('--cache', type=rational_arg, required=True)
    rate.add_argument('--method', choices=['all', 'cutset', 'proposed', 'han', 'cdb'], default='all')
    rate.add_argument('--json', action='store_true')
    rate.set_defaults(handler=cmd_rate)

    sweep_cmd = commands.add_parser('sweep', parents=[system, search], help='CSV over a grid of M')
    sweep_cmd.add_argument('--points', type=int, default=25)
    sweep_cmd.add_argument('--out', default='-', help="output file, '-' for stdout")
    sweep_cmd.set_defaults(handler=cmd_sweep)

    nsat = commands.add_parser('nsat', help='saturation number estimates')
    nsat.add_argument('--alpha', type=positive_int, required=True)
    nsat.add_argument('--beta', type=positive_int, required=True)
    nsat.add_argument('--users', type=positive_int, required=True)
    nsat.add_argument('--exact', action='store_true', help='exhaustive search (tiny parameters only)')
    nsat.set_defaults(handler=cmd_nsat)

    instance = commands.add_parser('instance', help='emit a saturating instance')
    instance.add_argument('--alpha', type=positive_int)
    instance.add_argument('--beta', type=positive_int)
    instance.add_argument('--users', type=positive_int)
    instance.add_argument('--format', choices=['json', 'dot'], default='json')
    instance.add_argument('--raw', action='store_true', help='skip file reuse')
    instance.add_argument('--input', help='label an instance read from JSON instead')
    instance.add_argument('--perm', help='relabel users by a permutation of 1..K, e.g. 2,1,3')
    instance.set_defaults(handler=cmd_instance)

    verify = commands.add_parser('verify', help='seeded property suites')
    verify.add_argument('--seed', type=int, default=0)
    verify.add_argument('--trials', type=int, default=1000)
    verify.add_argument('--suite', choices=('all',) + verifyConfig.suites, default='all')
    verify.add_argument('--pairs', type=pair_range, default=None,
                        help='N and K range of the gap suites, e.g. 2-12')
    verify.set_defaults(handler=cmd_verify)

    mrate = commands.add_parser('mrate', parents=[system, search],
                                help='multi-request and device-to-device bounds')
    mrate.add_argument('--cache', type=rational_arg, required=True)
    mrate.add_argument('--requests-per-user', type=positive_int, default=1)
    mrate.add_argument('--d2d', action='store_true')
    mrate.set_defaults(handler=cmd_mrate)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else exitCodes.usage

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')

    try:
        return args.handler(args)
    except CCBoundError as err:
        print('error: %s' % err, file=sys.stderr)
        return exitCodes.domain


def main_exit():
    sys.exit(main())
