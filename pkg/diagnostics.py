# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 17:41:26 2026

Seeded property suites behind "ccbound verify". Each suite returns a
SuiteResult; failures carry the offending instance as JSON when there is one.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from model import SystemParams, normalize_in_degree, random_instance
from labeling import (augment_with_new_file, new_file_bound, permute_users, psi_table,
                      run_labeling)
from saturation import (build_saturating_instance, cross_recoveries, nsat_upper_analytic,
                        nsat_upper_construction, nsat_upper_recursive, reuse_files)
from bounds import SearchConfig, verify_gap_le_4
from variants import multirequest_gap_verify
from Misc.instanceIO import to_json

logger = logging.getLogger(__name__)


##################################################################################
# CONFIGURATION
##################################################################################
class verifyConfig:

    # Suites run by "all", in this order
    suites = ('psi', 'permute', 'augment', 'newfiles', 'union', 'identities', 'gap', 'nsat',
              'multirequest')
    # Suites whose (N, K) range can be overridden from the command line
    rangedSuites = ('gap', 'multirequest')

    class random:
        # Ranges of the random instances (all lower limits are 1)
        maxFiles = 6
        maxUsers = 4
        maxAlpha = 4
        maxBeta = 4
        # Internal nodes merge up to this many subtrees before normalization
        maxInDegree = 3

    class gap:
        # N and K both range over pairRange
        pairRange = (2, 32)
        # M points per (N, K), corners added
        points = 25
        threshold = 4
        # Threshold for M > N/2
        regionThreshold = 2

    class nsat:
        # alpha, beta, K in [1..gridMax] for the recursion cross-check
        gridMax = 12
        # smaller grid for the labeling-based checks
        labelGridMax = 6

    class identities:
        gridMax = 12

    class multirequest:
        # N and K both range over pairRange, M over the corner grid
        pairRange = (2, 24)
        requests = (1, 2, 3)
        threshold = 4


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    # (message, instance JSON or None)
    failures: List[Tuple[str, Optional[str]]] = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def fail(self, message, instance=None):
        self.failures.append((message, None if instance is None else to_json(instance)))


##################################################################################
# RANDOM INSTANCES
##################################################################################
def draw_instance(rng, distinct_caches=False, binary=True):
    cfg = verifyConfig.random
    params = SystemParams(int(rng.integers(1, cfg.maxFiles + 1)), int(rng.integers(1, cfg.maxUsers + 1)))
    alpha = int(rng.integers(1, cfg.maxAlpha + 1))
    beta = int(rng.integers(1, cfg.maxBeta + 1))
    instance = random_instance(rng, params, alpha, beta, max_in_degree=cfg.maxInDegree,
                               distinct_caches=distinct_caches)
    return normalize_in_degree(instance) if binary else instance


def _binary_nodes(tree):
    return [u for u in tree.internal_nodes if tree.in_degree(u) == 2]


def _nested(labeled, u):
    first, second = (labeled.gamma(c) for c in labeled.instance.tree.children[u])
    return first <= second or second <= first


##################################################################################
# SUITES
##################################################################################
def psi_suite(rng, trials):
    # sum of psi equals L, every first recovery is marked, normalization never lowers L
    result = SuiteResult('psi')
    for _ in range(trials):
        raw = draw_instance(rng, binary=False)
        instance = normalize_in_degree(raw)
        labeled = run_labeling(instance)
        table = psi_table(instance, labeled)
        result.checked += 1
        if table.total() != labeled.lower_bound:
            result.fail('sum of psi %d != L %d' % (table.total(), labeled.lower_bound), instance)
        if not all(table.omega.values()):
            result.fail('a first recovery is left unmarked', instance)
        if labeled.lower_bound < run_labeling(raw).lower_bound:
            result.fail('normalization lowered L', raw)
        if normalize_in_degree(instance) != instance:
            result.fail('normalization is not idempotent', raw)
    return result


def permute_suite(rng, trials):
    result = SuiteResult('permute')
    for _ in range(trials):
        instance = draw_instance(rng)
        pi = [int(p) + 1 for p in rng.permutation(instance.params.num_users)]
        before = run_labeling(instance).new_files
        after = run_labeling(permute_users(instance, pi)).new_files
        result.checked += 1
        if before != after:
            result.fail('permutation %s changed W_new' % pi, instance)
    return result


def augment_suite(rng, trials):
    result = SuiteResult('augment')
    for _ in range(trials):
        instance = draw_instance(rng, distinct_caches=True)
        labeled = run_labeling(instance)
        if labeled.lower_bound >= instance.alpha * min(instance.beta, instance.params.num_users):
            continue
        augmented = augment_with_new_file(instance)
        result.checked += 1
        if run_labeling(augmented).lower_bound != labeled.lower_bound + 1:
            result.fail('augmentation did not raise L by one', instance)
        if augmented.params.num_files != instance.params.num_files + 1:
            result.fail('augmentation did not add exactly one file', instance)
    return result


def newfiles_suite(rng, trials):
    result = SuiteResult('newfiles')
    for _ in range(trials):
        instance = draw_instance(rng)
        labeled = run_labeling(instance)
        for u in _binary_nodes(instance.tree):
            result.checked += 1
            if len(labeled.new_files[u]) > new_file_bound(labeled, u):
                result.fail('|W_new(%d)| exceeds its bound' % u, instance)
    return result


def union_suite(rng, trials):
    # W(u) is the union of W_new over everything strictly below u
    result = SuiteResult('union')
    for _ in range(trials):
        instance = draw_instance(rng)
        tree = instance.tree
        labeled = run_labeling(instance)
        for u in tree.internal_nodes + (tree.root,):
            below = [v for v in tree.subtree_nodes(u) if v != u]
            result.checked += 1
            if labeled.labels[u].W != frozenset().union(*(labeled.new_files[v] for v in below)):
                result.fail('W(%d) differs from the union of W_new below it' % u, instance)
        if labeled.lower_bound > instance.alpha * min(instance.beta, instance.params.num_users):
            result.fail('L exceeds alpha*min(beta, K)', instance)
    return result


def identities_suite(rng=None, trials=None):
    # integer identities over all splits; rng and trials are unused
    result = SuiteResult('identities')
    top = verifyConfig.identities.gridMax
    for K in range(1, top + 1):
        for alpha_l in range(0, top + 1):
            for alpha_r in range(0, top + 1):
                for beta_l in range(0, top + 1):
                    for beta_r in range(0, top + 1):
                        result.checked += 1
                        whole = (alpha_l + alpha_r) * min(beta_l + beta_r, K)
                        parts = (alpha_l * min(beta_l, K) + alpha_r * min(beta_r, K)
                                 + cross_recoveries(alpha_l, beta_l, alpha_r, beta_r, K))
                        if whole != parts:
                            result.fail('split identity fails at K=%d, (%d,%d)+(%d,%d)'
                                        % (K, alpha_l, beta_l, alpha_r, beta_r))
                        hat_l, hat_r = min(beta_l, K), min(beta_r, K)
                        if min(hat_l, K - hat_r) != max(min(beta_l, K - beta_r), 0):
                            result.fail('distinct-cache identity fails at K=%d, beta=(%d,%d)'
                                        % (K, beta_l, beta_r))
    return result


def gap_suite(rng=None, trials=None, pairs=None):
    cfg = verifyConfig.gap
    result = SuiteResult('gap')
    low, high = pairs or cfg.pairRange
    grid = [(N, K) for N in range(low, high + 1) for K in range(low, high + 1)]
    report = verify_gap_le_4(grid, cfg.points, SearchConfig(), cfg.threshold, cfg.regionThreshold)
    result.checked = report.points
    if not report.passed:
        result.fail('gap %s at (N, K, M)=%s exceeds %d' % (report.max_gap, report.argmax, cfg.threshold))
    if not report.region_passed:
        result.fail('gap %s for M > N/2 exceeds %d' % (report.region_max, cfg.regionThreshold))
    logger.info('largest gap %s at %s', report.max_gap, report.argmax)
    return result


def nsat_suite(rng=None, trials=None):
    cfg = verifyConfig.nsat
    result = SuiteResult('nsat')
    for K in range(1, cfg.gridMax + 1):
        for alpha in range(1, cfg.gridMax + 1):
            for beta in range(1, cfg.gridMax + 1):
                result.checked += 1
                built = nsat_upper_construction(alpha, beta, K)
                if built != nsat_upper_recursive(alpha, beta, K):
                    result.fail('construction and recursion disagree at (%d,%d,%d)' % (alpha, beta, K))
                if beta <= K and built > nsat_upper_analytic(alpha, beta, K):
                    result.fail('construction exceeds the closed form at (%d,%d,%d)' % (alpha, beta, K))
                if beta == 1 and built != alpha:
                    result.fail('N_sat(%d,1,%d) != %d' % (alpha, K, alpha))

    for K in range(1, cfg.labelGridMax + 1):
        for alpha in range(1, cfg.labelGridMax + 1):
            for beta in range(1, cfg.labelGridMax + 1):
                raw = build_saturating_instance(alpha, beta, K)
                reused = reuse_files(raw)
                target = alpha * min(beta, K)
                result.checked += 1
                if run_labeling(raw).lower_bound != target:
                    result.fail('construction does not saturate at (%d,%d,%d)' % (alpha, beta, K), raw)
                labeled = run_labeling(reused)
                if labeled.lower_bound != target:
                    result.fail('file reuse changed L at (%d,%d,%d)' % (alpha, beta, K), raw)
                if not all(_nested(labeled, u) for u in _binary_nodes(reused.tree)):
                    result.fail('file reuse left un-nested recovered sets at (%d,%d,%d)'
                                % (alpha, beta, K), raw)
                if reused.params.num_files > raw.params.num_files:
                    result.fail('file reuse added files at (%d,%d,%d)' % (alpha, beta, K), raw)
    return result


def multirequest_suite(rng=None, trials=None, pairs=None):
    cfg = verifyConfig.multirequest
    result = SuiteResult('multirequest')
    low, high = pairs or cfg.pairRange
    grid = [(N, K) for N in range(low, high + 1) for K in range(low, high + 1)]
    reports = multirequest_gap_verify(grid, cfg.requests, threshold=cfg.threshold)
    for l, report in sorted(reports.items()):
        result.checked += report.points
        if not report.passed:
            result.fail('gap %s at (N, K, M)=%s exceeds %d with %d requests per user'
                        % (report.max_gap, report.argmax, cfg.threshold, l))
    return result


SUITES = {'psi': psi_suite,
          'permute': permute_suite,
          'augment': augment_suite,
          'newfiles': newfiles_suite,
          'union': union_suite,
          'identities': identities_suite,
          'gap': gap_suite,
          'nsat': nsat_suite,
          'multirequest': multirequest_suite}


def run_suites(names, seed, trials, pairs=None):
    # every suite draws from its own child stream, so results do not depend on the selection
    streams = dict(zip(verifyConfig.suites, np.random.SeedSequence(seed).spawn(len(verifyConfig.suites))))
    results = []
    for name in names:
        logger.info('running suite %s', name)
        options = {'pairs': pairs} if pairs and name in verifyConfig.rangedSuites else {}
        results.append(SUITES[name](np.random.default_rng(streams[name]), trials, **options))
    return results
