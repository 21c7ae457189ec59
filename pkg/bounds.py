# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 15:03:37 2026

Rates and lower bounds on R*(M): uncoded and coded achievable rates, the
cutset bound, the split-based bound searched over (alpha, beta) pairs, the
two comparison bounds and the multiplicative-gap verifier.
"""

import concurrent.futures
import logging
import os
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from model import Inequality, InputError, Provenance, SystemParams, cache_value
from saturation import balanced_split, nsat_upper_best
from Misc.rational import Envelope, ceil_div, interpolate, positive_part, render

logger = logging.getLogger(__name__)


##################################################################################
# CONFIGURATION
##################################################################################
@dataclass(frozen=True)
class SearchConfig:
    # Largest alpha tried
    #   None: N
    alpha_max: Optional[int] = None
    # Largest beta tried
    #   None: 2K-1
    beta_max: Optional[int] = None
    # Split enumeration
    #   False: balanced split (ceil(alpha/2), floor(beta/2)) only
    #   True: every alpha_l in [1..alpha-1], beta_l in [0..beta]
    full_split_enumeration: bool = False
    # Add the cutset pairs (floor(N/s), s, s*floor(N/s))
    include_cutset_pairs: bool = True

    def ranges(self, params):
        alpha_max = params.num_files if self.alpha_max is None else self.alpha_max
        beta_max = 2 * params.num_users - 1 if self.beta_max is None else self.beta_max
        return alpha_max, beta_max


# Threads used by sweeps; CCBOUND_THREADS caps it
def worker_count():
    raw = os.environ.get('CCBOUND_THREADS', '1')
    try:
        count = int(raw)
    except ValueError:
        raise InputError('CCBOUND_THREADS must be a positive integer, got %r' % raw)
    if count < 1:
        raise InputError('CCBOUND_THREADS must be a positive integer, got %r' % raw)
    return count


@dataclass(frozen=True)
class RatePoint:
    cache: Fraction
    rate: Fraction


##################################################################################
# RATES
##################################################################################
def uncoded_rate(params, M):
    M = cache_value(params, M)
    return min(params.num_files, params.num_users) * (1 - M / params.num_files)


def achievable_corners(params):
    N, K = params.num_files, params.num_users
    return [RatePoint(Fraction(t * N, K), (K - t) * min(Fraction(1, 1 + t), Fraction(N, K)))
            for t in range(K + 1)]


def achievable_rate(params, M):
    M = cache_value(params, M)
    return interpolate([(p.cache, p.rate) for p in achievable_corners(params)], M)


def cutset_bound(params, M):
    M = cache_value(params, M)
    N = params.num_files
    terms = [s - s * M / (N // s) for s in range(1, min(N, params.num_users) + 1)]
    return positive_part(max(terms))


##################################################################################
# SPLIT-BASED BOUND
##################################################################################
def proposed_inequality(params, alpha, beta, split):
    """alpha*R + beta*M >= min(alpha*min(beta,K), L_l + L_r + N - N_0), or None
    when N < N_0. The saturated inequality is returned instead whenever N
    reaches the saturation estimate of (alpha, beta) itself."""
    N, K = params.num_files, params.num_users
    alpha_l, beta_l = split
    if not (1 <= alpha_l < alpha and 0 <= beta_l <= beta):
        raise InputError('split (%d, %d) is not valid for (%d, %d)' % (alpha_l, beta_l, alpha, beta))
    alpha_r, beta_r = alpha - alpha_l, beta - beta_l
    cap = alpha * min(beta, K)

    if N >= nsat_upper_best(alpha, beta, K):
        return Inequality(alpha, beta, cap, Provenance.PROPOSED)

    n0 = max(nsat_upper_best(alpha_l, beta_l, K), nsat_upper_best(alpha_r, beta_r, K))
    if N < n0:
        return None
    joined = alpha_l * min(beta_l, K) + alpha_r * min(beta_r, K) + N - n0
    return Inequality(alpha, beta, min(cap, joined), Provenance.PROPOSED, split=(alpha_l, beta_l))


def _splits(alpha, beta, search):
    if search.full_split_enumeration:
        for alpha_l in range(1, alpha):
            for beta_l in range(beta + 1):
                yield alpha_l, beta_l
    else:
        (alpha_l, beta_l), _ = balanced_split(alpha, beta)
        if alpha_l < alpha:
            yield alpha_l, beta_l


@lru_cache(maxsize=256)
def proposed_candidates(params, search):
    """Every inequality the configured search produces, in a fixed order."""
    N, K = params.num_files, params.num_users
    alpha_max, beta_max = search.ranges(params)
    found = []
    for alpha in range(1, alpha_max + 1):
        for beta in range(1, beta_max + 1):
            if N >= nsat_upper_best(alpha, beta, K):
                found.append(Inequality(alpha, beta, alpha * min(beta, K), Provenance.PROPOSED))
                continue
            for split in _splits(alpha, beta, search):
                ineq = proposed_inequality(params, alpha, beta, split)
                if ineq is not None:
                    found.append(ineq)
    if search.include_cutset_pairs:
        for s in range(1, min(N, K) + 1):
            found.append(Inequality(N // s, s, s * (N // s), Provenance.CUTSET))
    if not found:
        raise InputError('search space for N=%d, K=%d is empty' % (N, K))
    logger.debug('%d candidate inequalities for N=%d, K=%d', len(found), N, K)
    return tuple(found)


def envelope_of(inequalities):
    return Envelope([(Fraction(-q.beta, q.alpha), q.bound / q.alpha) for q in inequalities])


@lru_cache(maxsize=256)
def proposed_envelope(params, search):
    return envelope_of(proposed_candidates(params, search))


def proposed_bound(params, M, search=None):
    """Best bound over the searched inequalities, with the arg-max inequality.

    Ties go to the smallest (alpha, beta, split).
    """
    search = search or SearchConfig()
    M = cache_value(params, M)
    best = None
    for ineq in proposed_candidates(params, search):
        value = ineq.value_at(M)
        if best is None or value > best[0] or (value == best[0] and ineq.sort_key() < best[1].sort_key()):
            best = (value, ineq)
    logger.debug('best inequality at M=%s: %s (%s)', M, best[1], best[1].provenance.value)
    return positive_part(best[0]), best[1]


def proposed_value(params, M, search=None):
    M = cache_value(params, M)
    return positive_part(proposed_envelope(params, search or SearchConfig()).value(M))


##################################################################################
# COMPARISON BOUNDS
##################################################################################
def _han_terms(params, alpha, beta):
    N, K = params.num_files, params.num_users
    mu = min(ceil_div(N - alpha * beta, alpha), K - beta)
    term = (N - Fraction(mu, mu + beta) * positive_part(N - alpha * beta)
            - positive_part(N - alpha * K))
    return term, mu


def han_inequality_value(params, alpha, beta, M):
    M = cache_value(params, M)
    if beta > params.num_users or alpha > ceil_div(params.num_files, beta):
        return None
    term, _ = _han_terms(params, alpha, beta)
    return (term - beta * M) / alpha


@lru_cache(maxsize=256)
def han_inequalities(params):
    found = []
    for beta in range(1, params.num_users + 1):
        for alpha in range(1, ceil_div(params.num_files, beta) + 1):
            term, mu = _han_terms(params, alpha, beta)
            found.append(Inequality(alpha, beta, term, Provenance.HAN, meta={'mu': mu}))
    return tuple(found)


def han_bound(params, M):
    M = cache_value(params, M)
    return positive_part(max(q.value_at(M) for q in han_inequalities(params)))


# Smallest n >= 1 with 3tn^2 - tn >= N - t
def _cdb_n(N, t):
    n = 1
    while 3 * t * n * n - t * n < N - t:
        n += 1
    return n


@lru_cache(maxsize=256)
def cdb_inequalities(params):
    N, K = params.num_files, params.num_users
    found = []
    for t in range(1, N + 1):
        n = _cdb_n(N, t)
        families = []
        if K >= 2:
            families.append((1, max(0, ceil_div(2 * t * n - K, 2 * t))))
        if K >= 2 * t:
            families.append((2, max(0, ceil_div(2 * n - K, 2))))
        for family, gamma in families:
            m = n - gamma
            if m <= 0:
                continue
            n_tilde = t * (m * m - m + 1)
            bound = min(4 * t * m * m, 2 * t * m * m + N - n_tilde)
            alpha, beta = (2 * m, 2 * t * m) if family == 1 else (2 * t * m, 2 * m)
            found.append(Inequality(alpha, beta, bound, Provenance.CDB,
                                    meta={'family': family, 't': t, 'm': m, 'n': n,
                                          'gamma': gamma, 'n_tilde': n_tilde}))
    return tuple(found)


def cdb_bound(params, M):
    M = cache_value(params, M)
    values = [q.value_at(M) for q in cdb_inequalities(params)]
    return positive_part(max(values)) if values else Fraction(0)


def best_known_bound(params, M, search=None):
    return max(cutset_bound(params, M), proposed_value(params, M, search),
               han_bound(params, M), cdb_bound(params, M))


##################################################################################
# GAP
##################################################################################
def _ratio(rate, bound):
    if rate == 0 and bound == 0:
        return Fraction(1)
    if bound == 0:
        return float('inf')
    return rate / bound


def gap(params, M, search=None):
    M = cache_value(params, M)
    found = _ratio(achievable_rate(params, M), proposed_value(params, M, search))
    if found == float('inf'):
        logger.warning('no positive lower bound at N=%d, K=%d, M=%s; widen the search',
                       params.num_files, params.num_users, M)
    return found


def sweep_grid(params, points):
    if points < 2:
        raise InputError('a sweep needs at least two points, got %d' % points)
    N, K = params.num_files, params.num_users
    grid = {Fraction(i * N, points - 1) for i in range(points)}
    grid.update(Fraction(k * N, K) for k in range(K + 1))
    return sorted(grid)


@dataclass(frozen=True)
class GapReport:
    max_gap: object
    # (N, K, M) where max_gap occurs
    argmax: Optional[Tuple[int, int, Fraction]]
    passed: bool
    # largest gap seen with M > N/2
    region_max: object
    region_passed: bool
    points: int


def _pair_gaps(params, grid, search):
    return [(M, gap(params, M, search)) for M in grid]


def verify_gap_le_4(param_grid, m_grid=25, search=None, threshold=4, region_threshold=2, threads=None):
    """Evaluates the gap at every (N, K, M) and compares against the thresholds.

    m_grid is a point count for sweep_grid or a callable params -> M values.
    """
    search = search or SearchConfig()
    pairs = [p if isinstance(p, SystemParams) else SystemParams(*p) for p in param_grid]
    grids = [m_grid(p) if callable(m_grid) else sweep_grid(p, m_grid) for p in pairs]

    with concurrent.futures.ThreadPoolExecutor(max_workers=threads or worker_count()) as executor:
        results = list(executor.map(lambda job: _pair_gaps(job[0], job[1], search), zip(pairs, grids)))

    max_gap, argmax, region_max, points = Fraction(0), None, Fraction(0), 0
    for params, gaps in zip(pairs, results):
        logger.info('gap sweep N=%d, K=%d: %d points', params.num_files, params.num_users, len(gaps))
        for M, value in gaps:
            points += 1
            if value > max_gap:
                max_gap, argmax = value, (params.num_files, params.num_users, M)
            if 2 * M > params.num_files and value > region_max:
                region_max = value
    return GapReport(max_gap, argmax, max_gap <= threshold, region_max,
                     region_max <= region_threshold, points)


##################################################################################
# SWEEPS
##################################################################################
CSV_HEADER = ('M', 'R_uncoded', 'R_achievable', 'LB_cutset', 'LB_proposed', 'LB_han', 'LB_cdb', 'gap')


@dataclass(frozen=True)
class OutputRecord:
    cache: Fraction
    rate_uncoded: Fraction
    rate_achievable: Fraction
    lb_cutset: Fraction
    lb_proposed: Fraction
    lb_han: Fraction
    lb_cdb: Fraction
    gap: object

    def row(self, as_decimal=False):
        return [render(getattr(self, f.name), as_decimal) for f in fields(self)]

    def as_dict(self, as_decimal=False):
        return dict(zip(CSV_HEADER, self.row(as_decimal)))


def record_at(params, M, search=None, lb_proposed=None):
    M = cache_value(params, M)
    achievable = achievable_rate(params, M)
    if lb_proposed is None:
        lb_proposed = proposed_value(params, M, search)
    return OutputRecord(M, uncoded_rate(params, M), achievable, cutset_bound(params, M),
                        lb_proposed, han_bound(params, M), cdb_bound(params, M),
                        _ratio(achievable, lb_proposed))


def sweep(params, grid, search=None, threads=None):
    grid = sorted(set(Fraction(M) for M in grid))
    search = search or SearchConfig()
    logger.info('sweeping N=%d, K=%d over %d points', params.num_files, params.num_users, len(grid))
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads or worker_count()) as executor:
        return list(executor.map(lambda M: record_at(params, M, search), grid))
