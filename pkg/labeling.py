# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 11:02:15 2026

Label propagation over problem instances: recovered-file sets, the lower
bound L, the psi pairing table and the instance transforms that keep or
raise L (user permutation, new-file augmentation).
"""

import logging
from dataclasses import dataclass, replace
from typing import Dict, Tuple

import numpy as np

from model import (DemandVector, Inequality, InputError, NodeKind, ProblemInstance, Provenance,
                   SaturationError, Tree, cache_labels_saturated, meeting_point,
                   require_valid, subtree)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NodeLabel:
    # files recovered strictly below the node
    W: frozenset
    # cache ids of the cache leaves below the node
    Z: frozenset
    # demand vectors of the delivery leaves below the node
    D: frozenset


@dataclass(frozen=True)
class LabelingResult:
    instance: ProblemInstance
    labels: Tuple[NodeLabel, ...]
    # W_new of each node, carried on its outgoing edge (empty for the root)
    new_files: Tuple[frozenset, ...]
    lower_bound: int
    recovered_union: frozenset

    def gamma(self, v):
        return self.labels[v].W | self.new_files[v]


@dataclass(frozen=True)
class PsiTable:
    deliveries: Tuple[int, ...]
    caches: Tuple[int, ...]
    # rows follow deliveries, columns follow caches
    psi: np.ndarray
    omega: Dict[Tuple[int, int], int]

    def entry(self, delivery, cache):
        return int(self.psi[self.deliveries.index(delivery), self.caches.index(cache)])

    def row_sums(self):
        return self.psi.sum(axis=1)

    def total(self):
        return int(self.psi.sum())


# Function returns the files recoverable from some (cache, delivery) pair
def rec(cache_ids, demand_set, params=None):
    users = cache_ids
    if params is not None:
        users = [j for j in cache_ids if 1 <= j <= params.num_users]
    return frozenset(demand.file_for(j) for j in users for demand in demand_set)


def run_labeling(instance):
    require_valid(instance)
    tree = instance.tree
    labels = [None] * len(tree)
    new_files = [frozenset()] * len(tree)

    for v in tree.order:
        node = tree.nodes[v]
        if node.is_leaf:
            Z = frozenset([node.cache_id]) if node.kind == NodeKind.CACHE else frozenset()
            D = frozenset([node.demand]) if node.kind == NodeKind.DELIVERY else frozenset()
            W = frozenset()
        else:
            kids = tree.children[v]
            Z = frozenset().union(*(labels[c].Z for c in kids))
            D = frozenset().union(*(labels[c].D for c in kids))
            W = frozenset().union(*(labels[c].W | new_files[c] for c in kids))
        labels[v] = NodeLabel(W, Z, D)
        if node.kind != NodeKind.ROOT:
            new_files[v] = rec(Z, D, instance.params) - W
            if new_files[v]:
                logger.debug('node %d recovers new files %s', v, sorted(new_files[v]))

    bound = sum(len(files) for files in new_files)
    return LabelingResult(instance, tuple(labels), tuple(new_files), bound,
                          labels[tree.root].W)


def inequality_of(instance):
    result = run_labeling(instance)
    if instance.alpha == 0 or instance.beta == 0:
        raise InputError('instance needs at least one delivery and one cache leaf')
    return Inequality(instance.alpha, instance.beta, result.lower_bound, Provenance.CUSTOM)


def psi_table(instance, result=None):
    """Pairs (delivery leaf, cache leaf) with first-recovery events.

    Delivery leaves and cache leaves are both visited in ascending index.
    """
    if result is None:
        result = run_labeling(instance)
    tree = instance.tree
    deliveries = tree.delivery_leaves
    caches = tree.cache_leaves
    psi = np.zeros((len(deliveries), len(caches)), dtype=np.int64)
    omega = {(u, f): 0 for u in range(len(tree)) for f in result.new_files[u]}

    for i, v in enumerate(deliveries):
        demand = tree.nodes[v].demand
        for j, w in enumerate(caches):
            u = meeting_point(tree, v, w)
            delta = demand.file_for(tree.nodes[w].cache_id)
            if delta in result.new_files[u] and omega[(u, delta)] == 0:
                psi[i, j] = 1
                omega[(u, delta)] = 1

    return PsiTable(deliveries, caches, psi, omega)


def permute_users(instance, pi):
    """Relabels users by the bijection i -> pi[i-1].

    Cache Z_i becomes Z_pi(i); demand (d_1..d_K) becomes (d_sigma(1)..d_sigma(K))
    with sigma the inverse of pi.
    """
    K = instance.params.num_users
    pi = [int(p) for p in pi]
    if sorted(pi) != list(range(1, K + 1)):
        raise InputError('%s is not a permutation of 1..%d' % (pi, K))
    sigma = [0] * K
    for i, p in enumerate(pi):
        sigma[p - 1] = i + 1

    nodes = []
    for node in instance.tree.nodes:
        if node.kind == NodeKind.CACHE:
            node = replace(node, cache_id=pi[node.cache_id - 1])
        elif node.kind == NodeKind.DELIVERY:
            demand = DemandVector(tuple(node.demand.file_for(sigma[j]) for j in range(K)))
            node = replace(node, demand=demand)
        nodes.append(node)
    return ProblemInstance(instance.params, Tree(tuple(nodes)))


def augment_with_new_file(instance):
    """Rewrites one demand entry to a fresh file N+1 so that L grows by one."""
    result = run_labeling(instance)
    params = instance.params
    tree = instance.tree
    capacity = min(instance.beta, params.num_users)
    if result.lower_bound >= instance.alpha * capacity:
        raise SaturationError('instance is already saturated (L=%d)' % result.lower_bound)
    if not cache_labels_saturated(instance):
        logger.warning('cache labels of the instance do not cover min(beta, K) users')
        raise SaturationError('cache ids cover %d users, expected min(beta, K)=%d'
                              % (instance.beta_hat, capacity))

    table = psi_table(instance, result)
    sums = table.row_sums()
    i_star = int(np.flatnonzero(sums < capacity)[0])
    v_star = table.deliveries[i_star]

    row = table.psi[i_star]
    pi_one = [w for j, w in enumerate(table.caches) if row[j] == 1]
    covered = {tree.nodes[w].cache_id for w in pi_one}
    pi_zero = [w for j, w in enumerate(table.caches)
               if row[j] == 0 and tree.nodes[w].cache_id not in covered]

    meetings = {w: meeting_point(tree, v_star, w) for w in pi_zero}
    u_star = min(set(meetings.values()), key=lambda u: (-tree.depth(u), u))
    j_star = min(w for w in pi_zero if meetings[w] == u_star)
    k = tree.nodes[j_star].cache_id
    logger.debug('augmenting delivery leaf %d at user %d (meeting node %d, cache leaf %d)',
                 v_star, k, u_star, j_star)

    demand = tree.nodes[v_star].demand.with_demand(k, params.num_files + 1)
    return instance.with_demand(v_star, demand, params.with_files(params.num_files + 1))


def _two_children(result, u):
    tree = result.instance.tree
    node = tree.node(u)
    if node.kind != NodeKind.INTERNAL or tree.in_degree(u) != 2:
        raise InputError('node %d is not an internal node with two children' % u)
    return tree.children[u]


def directional_recovery(result, u):
    """(Rec(Z_r \\ Z_l, D_l), Rec(Z_l \\ Z_r, D_r)); the left child has the smaller index."""
    left, right = _two_children(result, u)
    params = result.instance.params
    l, r = result.labels[left], result.labels[right]
    return rec(r.Z - l.Z, l.D, params), rec(l.Z - r.Z, r.D, params)


def new_file_bound(result, u):
    left, right = _two_children(result, u)
    K = result.instance.params.num_users
    N = result.instance.params.num_files
    l, r = result.labels[left], result.labels[right]
    rho = (len(l.D) * max(min(len(r.Z), K - len(l.Z)), 0)
           + len(r.D) * max(min(len(l.Z), K - len(r.Z)), 0))
    return min(rho, N - len(result.gamma(left) | result.gamma(right)))


def root_decomposition(result):
    """Subtree inequalities below u* and the files u* adds on top of them."""
    instance = result.instance
    top = instance.tree.top
    left, right = _two_children(result, top)
    parts = []
    for child in (left, right):
        part = subtree(instance, child)
        parts.append(Inequality(part.alpha, part.beta, run_labeling(part).lower_bound,
                                Provenance.CUSTOM))
    return parts[0], parts[1], len(result.new_files[top])


def is_atomic_candidate(instance):
    result = run_labeling(instance)
    return bool(result.new_files[instance.tree.top])
