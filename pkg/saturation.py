# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 13:40:08 2026

Saturation numbers N_sat(alpha, beta, K): the balanced recursive construction
with file reuse, the memoized recursion that counts its files, the closed-form
bound and an exhaustive oracle for tiny parameters.
"""

import itertools
import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

from model import (DemandVector, DomainError, InputError, Node, NodeKind, NotFoundError,
                   ProblemInstance, RefusalError, SystemParams, Tree, instance_from_merges)
from labeling import run_labeling
from Misc.rational import ceil_div, positive_part

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchLimits:
    # alpha + beta of the brute-force search
    max_leaves: int = 5
    max_users: int = 3
    # largest N tried before giving up
    max_files: int = 6


@dataclass(frozen=True)
class SaturationEstimate:
    alpha: int
    beta: int
    users: int
    upper_construction: int
    upper_analytic: Optional[int]
    upper_trivial: int
    exact: Optional[int] = None
    # only for beta = t*alpha <= K
    upper_cdb: Optional[int] = None


def _check_positive(**values):
    for name, value in values.items():
        if value < 1:
            raise InputError('%s must be a positive integer, got %d' % (name, value))


# Function returns the split (a_l, b_l), (a_r, b_r) used by the construction
def balanced_split(a, b):
    a_l, b_l = ceil_div(a, 2), b // 2
    return (a_l, b_l), (a - a_l, b - b_l)


# Files recovered across a node joining subtrees (a_l, b_l) and (a_r, b_r)
def cross_recoveries(a_l, b_l, a_r, b_r, users):
    return (a_l * positive_part(min(b_r, users - b_l))
            + a_r * positive_part(min(b_l, users - b_r)))


##################################################################################
# CONSTRUCTION
##################################################################################
def build_saturating_instance(alpha, beta, users):
    """Balanced in-tree whose labeling saturates at L = alpha*min(beta, K).

    Numbering: delivery leaves left to right, cache leaves left to right,
    internal nodes in post-order, then the root.
    """
    _check_positive(alpha=alpha, beta=beta, users=users)
    width = min(beta, users)

    # shape entries: ('delivery',), ('cache', id) or ('internal', left, right)
    def grow(a, b, ids):
        if a + b <= 1:
            return ('delivery',) if a == 1 else ('cache', ids[0])
        (a_l, b_l), (a_r, b_r) = balanced_split(a, b)
        left_ids = ids[:min(b_l, users)]
        right_ids = ids[len(ids) - min(b_r, users):]
        return ('internal', grow(a_l, b_l, left_ids), grow(a_r, b_r, right_ids))

    shape = grow(alpha, beta, tuple(range(1, width + 1)))

    deliveries, caches, internals = [], [], []

    def walk(entry):
        if entry[0] == 'delivery':
            key = ('delivery', len(deliveries))
            deliveries.append(key)
        elif entry[0] == 'cache':
            key = ('cache', len(caches))
            caches.append((key, entry[1]))
        else:
            left, right = walk(entry[1]), walk(entry[2])
            key = ('internal', len(internals))
            internals.append((key, left, right))
        return key

    top = walk(shape)

    ids = {}
    for key in deliveries:
        ids[key] = len(ids)
    for key, _ in caches:
        ids[key] = len(ids)
    for key, _, _ in internals:
        ids[key] = len(ids)
    root = len(ids)

    parent = {top: root}
    for key, left, right in internals:
        parent[left] = ids[key]
        parent[right] = ids[key]

    K = users
    nodes = []
    for t, key in enumerate(deliveries):
        demands = [(t * width) + r + 1 if r < width else 1 for r in range(K)]
        nodes.append(Node(ids[key], NodeKind.DELIVERY, parent[key], demand=DemandVector(demands)))
    for key, cache_id in caches:
        nodes.append(Node(ids[key], NodeKind.CACHE, parent[key], cache_id=cache_id))
    for key, _, _ in internals:
        nodes.append(Node(ids[key], NodeKind.INTERNAL, parent[key]))
    nodes.append(Node(root, NodeKind.ROOT))

    params = SystemParams(alpha * width, users)
    return ProblemInstance(params, Tree(tuple(nodes)))


def reuse_files(instance):
    """Renames files of the lighter subtree into the heavier one at every
    binary internal node, bottom-up, then compacts file ids to 1..n.

    Gamma of a node is Rec(Z, D) over its subtree. At a node the child with
    the larger Gamma is the left one (ties: smaller index). The files of
    Gamma_r - Gamma_l are mapped in ascending order onto Gamma_l - Gamma_r.
    """
    result = run_labeling(instance)
    tree = instance.tree
    K = instance.params.num_users
    demands = {v: list(tree.nodes[v].demand) for v in tree.delivery_leaves}
    below = {u: [v for v in tree.subtree_nodes(u) if tree.nodes[v].kind == NodeKind.DELIVERY]
             for u in range(len(tree))}
    Z = {u: sorted(j for j in result.labels[u].Z if 1 <= j <= K) for u in range(len(tree))}

    def gamma(u):
        return frozenset(demands[v][j - 1] for v in below[u] for j in Z[u])

    for u in tree.order:
        if tree.nodes[u].kind != NodeKind.INTERNAL or tree.in_degree(u) != 2:
            continue
        first, second = tree.children[u]
        left, right = (first, second) if len(gamma(first)) >= len(gamma(second)) else (second, first)
        g_l, g_r = gamma(left), gamma(right)
        if g_r <= g_l:
            continue
        phi = dict(zip(sorted(g_r - g_l), sorted(g_l - g_r)))
        for v in below[right]:
            for j in Z[right]:
                if demands[v][j - 1] in phi:
                    demands[v][j - 1] = phi[demands[v][j - 1]]
        logger.debug('node %d reuses files %s', u, phi)

    # Entries outside every cache id are never recovered; they are set to file 1
    users = Z[tree.root]
    recovered = sorted(frozenset(demands[v][j - 1] for v in tree.delivery_leaves for j in users))
    compact = {f: i + 1 for i, f in enumerate(recovered)}
    nodes = list(tree.nodes)
    for v in tree.delivery_leaves:
        row = [compact.get(f, 1) if j + 1 in users else 1 for j, f in enumerate(demands[v])]
        nodes[v] = replace(nodes[v], demand=DemandVector(row))
    params = instance.params.with_files(max(len(recovered), 1))
    return ProblemInstance(params, Tree(tuple(nodes)))


##################################################################################
# UPPER BOUNDS ON N_sat
##################################################################################
def nsat_upper_construction(alpha, beta, users):
    instance = reuse_files(build_saturating_instance(alpha, beta, users))
    return(instance.params.num_files)


@lru_cache(maxsize=None)
def _nhat(a, b, users):
    if a + b <= 1:
        return 0
    (a_l, b_l), (a_r, b_r) = balanced_split(a, b)
    return (max(_nhat(a_l, b_l, users), _nhat(a_r, b_r, users))
            + cross_recoveries(a_l, b_l, a_r, b_r, users))


def nsat_upper_recursive(alpha, beta, users):
    if alpha < 0 or beta < 0 or users < 1:
        raise InputError('need alpha, beta >= 0 and K >= 1')
    return(_nhat(alpha, beta, users))


def nsat_upper_analytic(alpha, beta, users):
    if beta > users:
        raise DomainError('closed-form N_sat bound needs beta <= K (beta=%d, K=%d)' % (beta, users))
    return((2 * alpha * beta + alpha + beta) // 3)


# Function bounds N_sat(m, t*m, K) by t(m^2 - m + 1), the comparison-bound instance shape
def nsat_upper_cdb(alpha, beta, users):
    if alpha < 1 or beta < 1 or beta % alpha or beta > users:
        return(None)
    t = beta // alpha
    return(t * (alpha * alpha - alpha + 1))


@lru_cache(maxsize=None)
def nsat_upper_best(alpha, beta, users):
    if alpha == 0 or beta == 0:
        return 0
    best = min(_nhat(alpha, beta, users), alpha * min(beta, users))
    if beta <= users:
        best = min(best, nsat_upper_analytic(alpha, beta, users))
    cdb = nsat_upper_cdb(alpha, beta, users)
    if cdb is not None:
        best = min(best, cdb)
    return best


def saturation_path(alpha, beta, users):
    """(a, b, files added) from the top node down the child with the larger count."""
    _check_positive(alpha=alpha, beta=beta, users=users)
    path = []
    a, b = alpha, beta
    while a + b > 1:
        (a_l, b_l), (a_r, b_r) = balanced_split(a, b)
        path.append((a, b, cross_recoveries(a_l, b_l, a_r, b_r, users)))
        if _nhat(a_l, b_l, users) >= _nhat(a_r, b_r, users):
            a, b = a_l, b_l
        else:
            a, b = a_r, b_r
    return path


##################################################################################
# EXHAUSTIVE SEARCH
##################################################################################
@lru_cache(maxsize=None)
def _shapes(leaves):
    if leaves == 1:
        return ((),)
    found = []
    for i in range(1, leaves // 2 + 1):
        left_shapes, right_shapes = _shapes(i), _shapes(leaves - i)
        for p, left in enumerate(left_shapes):
            for q, right in enumerate(right_shapes):
                if i == leaves - i and q < p:
                    continue
                found.append((left, right))
    return tuple(found)


def enumerate_tree_shapes(leaves):
    """Binary in-tree shapes on the given number of leaves, as nested pairs
    with () for a leaf. Mirror images are listed once."""
    if leaves < 1:
        raise InputError('a tree needs at least one leaf')
    return iter(_shapes(leaves))


# Function returns the merge list of a shape; leaves are numbered left to right
def _shape_merges(shape):
    merges = []
    counter = itertools.count()
    internal = []

    def walk(entry):
        if entry == ():
            return ('leaf', next(counter))
        left, right = walk(entry[0]), walk(entry[1])
        internal.append((left, right))
        return ('internal', len(internal) - 1)

    walk(shape)
    leaves = next(counter)

    def resolve(ref):
        return ref[1] if ref[0] == 'leaf' else leaves + ref[1]

    for left, right in internal:
        merges.append([resolve(left), resolve(right)])
    return merges


# Restricted growth strings: first occurrences appear in increasing order
def _restricted_growth(length, cap):
    if length == 0:
        yield ()
        return
    for head in _restricted_growth(length - 1, cap):
        top = max(head, default=0)
        for value in range(1, min(top + 1, cap) + 1):
            yield head + (value,)


def nsat_exact_bruteforce(alpha, beta, users, limits=None):
    """Smallest N for which some instance reaches L = alpha*min(beta, K).

    Cache ids and file ids are enumerated up to renaming. Only demand
    entries at users that own a cache leaf are varied; the rest stay 1.
    """
    limits = limits or SearchLimits()
    _check_positive(alpha=alpha, beta=beta, users=users)
    if alpha + beta > limits.max_leaves or users > limits.max_users:
        raise RefusalError('brute force limited to alpha+beta <= %d and K <= %d, got (%d, %d, %d)'
                           % (limits.max_leaves, limits.max_users, alpha, beta, users))

    target = alpha * min(beta, users)
    leaves = alpha + beta
    shapes = [(_shape_merges(shape)) for shape in _shapes(leaves)]
    best = 0

    for N in range(1, limits.max_files + 1):
        logger.debug('brute force (%d, %d, %d): trying N=%d', alpha, beta, users, N)
        params = SystemParams(N, users)
        for merges in shapes:
            for positions in itertools.combinations(range(leaves), alpha):
                for cache_ids in _restricted_growth(beta, users):
                    used = sorted(set(cache_ids))
                    for entries in _restricted_growth(alpha * len(used), N):
                        signals = []
                        caches = iter(cache_ids)
                        rows = iter(range(alpha))
                        for v in range(leaves):
                            if v in positions:
                                t = next(rows)
                                row = [1] * users
                                for s, j in enumerate(used):
                                    row[j - 1] = entries[t * len(used) + s]
                                signals.append(tuple(row))
                            else:
                                signals.append(next(caches))
                        found = run_labeling(instance_from_merges(params, signals, merges)).lower_bound
                        best = max(best, found)
                        if found == target:
                            return N
    raise NotFoundError('no instance with N <= %d reaches L=%d (best %d)'
                        % (limits.max_files, target, best), best)


def estimate(alpha, beta, users, exact=False, limits=None):
    _check_positive(alpha=alpha, beta=beta, users=users)
    analytic = nsat_upper_analytic(alpha, beta, users) if beta <= users else None
    return SaturationEstimate(
        alpha, beta, users,
        upper_construction=nsat_upper_construction(alpha, beta, users),
        upper_analytic=analytic,
        upper_trivial=alpha * min(beta, users),
        exact=nsat_exact_bruteforce(alpha, beta, users, limits) if exact else None,
        upper_cdb=nsat_upper_cdb(alpha, beta, users))
