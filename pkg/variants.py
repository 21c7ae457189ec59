# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 16:18:44 2026

Bounds for the variants of the caching problem: users requesting l files
per round, and device-to-device delivery.
"""

import concurrent.futures
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from model import (DomainError, InfeasibleError, Inequality, InputError, Provenance,
                   SystemParams, cache_value)
from bounds import (GapReport, SearchConfig, achievable_rate, cutset_bound, envelope_of,
                    proposed_bound, proposed_value, sweep_grid, worker_count)
from Misc.rational import ceil_div, positive_part

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultiRequestParams:
    base: SystemParams
    # l: files requested by each user per delivery round
    requests_per_user: int = 1

    def __post_init__(self):
        if self.requests_per_user < 1:
            raise InputError('requests per user must be >= 1, got %d' % self.requests_per_user)


def multirequest_achievable(mr_params, M):
    return mr_params.requests_per_user * achievable_rate(mr_params.base, M)


# Upper bound on the saturation number when every user asks for l files
def multirequest_nsat(mr_params, alpha, beta):
    l, K = mr_params.requests_per_user, mr_params.base.num_users
    return min(l * ((2 * alpha * beta + alpha + beta) // 3), l * alpha * min(beta, K))


def multirequest_inequality(mr_params, alpha, beta):
    """alpha*R + beta*M >= min(2l*alpha*min(beta,K), l*alpha*min(beta,K) + (N-N_0)/2),
    or None when N < N_0."""
    N, K = mr_params.base.num_files, mr_params.base.num_users
    l = mr_params.requests_per_user
    if alpha < 1 or beta < 1:
        raise InputError('alpha and beta must be positive, got (%d, %d)' % (alpha, beta))
    if beta > K:
        raise DomainError('multi-request saturation bound needs beta <= K (beta=%d, K=%d)' % (beta, K))
    n0 = multirequest_nsat(mr_params, alpha, beta)
    if N < n0:
        return None
    full = l * alpha * min(beta, K)
    return Inequality(alpha, beta, min(2 * full, full + Fraction(N - n0, 2)),
                      Provenance.MULTIREQUEST, meta={'requests': l, 'n0': n0})


@lru_cache(maxsize=256)
def multirequest_candidates(mr_params):
    N, K = mr_params.base.num_files, mr_params.base.num_users
    l = mr_params.requests_per_user
    found = []
    # the halved instances need 2*beta <= K
    for alpha in range(1, N + 1):
        for beta in range(1, K // 2 + 1):
            ineq = multirequest_inequality(mr_params, alpha, beta)
            if ineq is not None:
                found.append(ineq)
    # every file is recovered once ceil(N/l) delivery signals meet one cache
    found.append(Inequality(ceil_div(N, l), 1, N, Provenance.MULTIREQUEST, meta={'requests': l}))
    # s users asking for l distinct files each, over floor(N/(s*l)) rounds
    for s in range(1, min(K, N // l) + 1):
        rounds = N // (s * l)
        found.append(Inequality(rounds, s, s * l * rounds, Provenance.CUTSET, meta={'requests': l}))
    return tuple(found)


@lru_cache(maxsize=256)
def _multirequest_envelope(mr_params):
    return envelope_of(multirequest_candidates(mr_params))


def multirequest_bound(mr_params, M, search=None):
    """Lower bound on R*(M) with l requests per user.

    Bounds for a single request stay valid: a user asking for one file l
    times is a special case.
    """
    M = cache_value(mr_params.base, M)
    return max(positive_part(_multirequest_envelope(mr_params).value(M)),
               cutset_bound(mr_params.base, M),
               proposed_value(mr_params.base, M, search))


def multirequest_gap(mr_params, M, search=None):
    rate = multirequest_achievable(mr_params, M)
    bound = multirequest_bound(mr_params, M, search)
    if rate == 0 and bound == 0:
        return Fraction(1)
    if bound == 0:
        return float('inf')
    return rate / bound


def multirequest_gap_verify(param_grid, requests, m_grid=None, search=None, threshold=4, threads=None):
    """GapReport per l over the grid; the default M grid is the corner grid."""
    search = search or SearchConfig()
    pairs = [p if isinstance(p, SystemParams) else SystemParams(*p) for p in param_grid]
    if m_grid is None:
        m_grid = lambda params: sweep_grid(params, 2)
    reports = {}
    for l in requests:
        jobs = [(MultiRequestParams(p, l), list(m_grid(p))) for p in pairs]

        def run(job):
            mr_params, grid = job
            return [(M, multirequest_gap(mr_params, M, search)) for M in grid]

        with concurrent.futures.ThreadPoolExecutor(max_workers=threads or worker_count()) as executor:
            results = list(executor.map(run, jobs))

        max_gap, argmax, region_max, points = Fraction(0), None, Fraction(0), 0
        for (mr_params, _), gaps in zip(jobs, results):
            N = mr_params.base.num_files
            for M, value in gaps:
                points += 1
                if value > max_gap:
                    max_gap, argmax = value, (N, mr_params.base.num_users, M)
                if 2 * M > N and value > region_max:
                    region_max = value
        logger.info('multi-request gap l=%d: max %s over %d points', l, max_gap, points)
        reports[l] = GapReport(max_gap, argmax, max_gap <= threshold, region_max,
                               region_max <= threshold, points)
    return reports


def d2d_bound(params, M, search=None):
    M = cache_value(params, M)
    if params.num_users * M < params.num_files:
        raise InfeasibleError('device-to-device delivery needs K*M >= N (K*M=%s, N=%d)'
                              % (params.num_users * M, params.num_files))
    value, _ = proposed_bound(params, M, search)
    return value
