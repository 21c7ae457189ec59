# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 09:12:40 2026

Domain types of the bound engine: system parameters, cache sizes, demand
vectors, labeled directed in-trees and the problem instances built on them.
"""

import enum
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx

logger = logging.getLogger(__name__)


##################################################################################
# ERRORS
##################################################################################
class CCBoundError(ValueError):
    """Base class of every error raised by the bound engine."""


class InputError(CCBoundError):
    pass


class MalformedTreeError(CCBoundError):
    pass


class InstanceValidationError(CCBoundError):

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__('invalid instance: ' + '; '.join(self.violations))


class SaturationError(CCBoundError):
    pass


class DomainError(CCBoundError):
    pass


class RefusalError(CCBoundError):
    pass


class NotFoundError(CCBoundError):

    def __init__(self, message, max_bound=0):
        super().__init__(message)
        self.max_bound = max_bound


class InfeasibleError(CCBoundError):
    pass


# Function returns value as an int, refusing booleans and non-integral numbers
def as_integer(value, what='value'):
    if isinstance(value, bool):
        raise InputError('%s %r is not an integer' % (what, value))
    try:
        number = int(value)
    except (TypeError, ValueError, OverflowError):
        raise InputError('%s %r is not an integer' % (what, value))
    if number != value:
        raise InputError('%s %r is not an integer' % (what, value))
    return number


##################################################################################
# SYSTEM PARAMETERS
##################################################################################
@dataclass(frozen=True)
class SystemParams:
    # N: number of files on the server
    num_files: int
    # K: number of users, each with one cache
    num_users: int

    def __post_init__(self):
        if self.num_files < 1 or self.num_users < 1:
            raise InputError('need at least one file and one user, got N=%d, K=%d'
                             % (self.num_files, self.num_users))

    def with_files(self, num_files):
        return replace(self, num_files=num_files)


@dataclass(frozen=True)
class CacheSize:
    value: Fraction

    def __post_init__(self):
        try:
            value = Fraction(self.value)
        except (TypeError, ValueError, ZeroDivisionError):
            raise InputError('cache size %r is not a rational number' % (self.value,))
        if value < 0:
            raise InputError('cache size %s is negative' % value)
        object.__setattr__(self, 'value', value)

    def within(self, params):
        if self.value > params.num_files:
            raise InputError('cache size %s exceeds N=%d' % (self.value, params.num_files))
        return self.value


# Returns M as an exact rational after checking 0 <= M <= N
def cache_value(params, M):
    if not isinstance(M, CacheSize):
        M = CacheSize(M)
    return M.within(params)


##################################################################################
# DEMAND VECTORS
##################################################################################
@dataclass(frozen=True, order=True)
class DemandVector:
    # demands[i-1] is the file requested by user i
    demands: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'demands', tuple(as_integer(d, 'demand') for d in self.demands))

    def __len__(self):
        return len(self.demands)

    def __iter__(self):
        return iter(self.demands)

    def __str__(self):
        return 'X(' + ','.join(str(d) for d in self.demands) + ')'

    def file_for(self, user):
        return self.demands[user - 1]

    def with_demand(self, user, file_id):
        demands = list(self.demands)
        demands[user - 1] = file_id
        return DemandVector(tuple(demands))

    def problems(self, params):
        found = []
        if len(self.demands) != params.num_users:
            found.append('has length %d, expected K=%d' % (len(self.demands), params.num_users))
        for d in self.demands:
            if not 1 <= d <= params.num_files:
                found.append('demands file %d outside [1..%d]' % (d, params.num_files))
        return found


##################################################################################
# INEQUALITIES
##################################################################################
class Provenance(str, enum.Enum):
    CUTSET = 'cutset'
    PROPOSED = 'proposed'
    HAN = 'han'
    CDB = 'cdb'
    CUSTOM = 'custom-instance'
    MULTIREQUEST = 'multirequest'


@dataclass(frozen=True)
class Inequality:
    """alpha*R + beta*M >= bound."""

    alpha: int
    beta: int
    bound: Fraction
    provenance: Provenance = Provenance.CUSTOM
    # (alpha_l, beta_l) for split-based inequalities
    split: Optional[Tuple[int, int]] = None
    # t, m, n, gamma, mu, ... for the comparison bounds
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'bound', Fraction(self.bound))

    def value_at(self, M):
        return (self.bound - self.beta * Fraction(M)) / self.alpha

    def sort_key(self):
        return (self.alpha, self.beta, self.split or (-1, -1))

    def __str__(self):
        return '%dR + %dM >= %s' % (self.alpha, self.beta, self.bound)


##################################################################################
# DIRECTED IN-TREES
##################################################################################
class NodeKind(str, enum.Enum):
    CACHE = 'cache'
    DELIVERY = 'delivery'
    INTERNAL = 'internal'
    ROOT = 'root'


@dataclass(frozen=True)
class Node:
    id: int
    kind: NodeKind
    parent: Optional[int] = None
    cache_id: Optional[int] = None
    demand: Optional[DemandVector] = None

    @property
    def is_leaf(self):
        return self.kind in (NodeKind.CACHE, NodeKind.DELIVERY)


@dataclass(frozen=True)
class Tree:
    nodes: Tuple[Node, ...]

    def __post_init__(self):
        nodes = tuple(self.nodes)
        object.__setattr__(self, 'nodes', nodes)
        for index, node in enumerate(nodes):
            if node.id != index:
                raise MalformedTreeError('node ids must be dense, found id %d at position %d' % (node.id, index))
            if node.parent is not None and not 0 <= node.parent < len(nodes):
                raise MalformedTreeError('node %d points to unknown parent %d' % (index, node.parent))

    def __len__(self):
        return len(self.nodes)

    def node(self, v):
        if not isinstance(v, (int,)) or not 0 <= v < len(self.nodes):
            raise InputError('unknown node id %r' % (v,))
        return self.nodes[v]

    @cached_property
    def children(self):
        kids = [[] for _ in self.nodes]
        for node in self.nodes:
            if node.parent is not None:
                kids[node.parent].append(node.id)
        return tuple(tuple(sorted(k)) for k in kids)

    def in_degree(self, v):
        return len(self.children[v])

    @cached_property
    def root(self):
        roots = [n.id for n in self.nodes if n.kind == NodeKind.ROOT]
        if len(roots) != 1:
            raise MalformedTreeError('expected exactly one root, found %d' % len(roots))
        return roots[0]

    @property
    def top(self):
        # u*, the single child of the root
        kids = self.children[self.root]
        if len(kids) != 1:
            raise MalformedTreeError('root in-degree ≠ 1 (found %d)' % len(kids))
        return kids[0]

    @cached_property
    def delivery_leaves(self):
        return tuple(n.id for n in self.nodes if n.kind == NodeKind.DELIVERY)

    @cached_property
    def cache_leaves(self):
        return tuple(n.id for n in self.nodes if n.kind == NodeKind.CACHE)

    @cached_property
    def internal_nodes(self):
        return tuple(n.id for n in self.nodes if n.kind == NodeKind.INTERNAL)

    @property
    def leaves(self):
        return tuple(sorted(self.delivery_leaves + self.cache_leaves))

    def to_networkx(self):
        graph = nx.DiGraph()
        for node in self.nodes:
            graph.add_node(node.id, kind=node.kind.value, cache_id=node.cache_id,
                           demands=None if node.demand is None else node.demand.demands)
        for node in self.nodes:
            if node.parent is not None:
                graph.add_edge(node.id, node.parent)
        return graph

    @cached_property
    def graph(self):
        # edges run child -> parent, so nx ancestors are subtree members
        return self.to_networkx()

    @cached_property
    def order(self):
        try:
            return tuple(nx.lexicographical_topological_sort(self.graph))
        except nx.NetworkXUnfeasible:
            raise MalformedTreeError('cycle detected')

    def path_to_root(self, v):
        self.node(v)
        # out-degree is at most one, so the preorder walk is the parent chain
        path = list(nx.dfs_preorder_nodes(self.graph, v))
        if self.nodes[path[-1]].parent is not None:
            raise MalformedTreeError('cycle detected')
        return path

    def depth(self, v):
        return len(self.path_to_root(v)) - 1

    def subtree_nodes(self, v):
        self.node(v)
        return sorted(nx.ancestors(self.graph, v) | {v})


##################################################################################
# PROBLEM INSTANCES
##################################################################################
@dataclass(frozen=True)
class ProblemInstance:
    params: SystemParams
    tree: Tree

    @property
    def alpha(self):
        return len(self.tree.delivery_leaves)

    @property
    def beta(self):
        return len(self.tree.cache_leaves)

    @property
    def alpha_hat(self):
        return len({self.tree.nodes[v].demand for v in self.tree.delivery_leaves})

    @property
    def beta_hat(self):
        return len({self.tree.nodes[v].cache_id for v in self.tree.cache_leaves})

    def with_demand(self, v, demand, params=None):
        nodes = list(self.tree.nodes)
        nodes[v] = replace(nodes[v], demand=demand)
        return ProblemInstance(params or self.params, Tree(tuple(nodes)))


# Builds an instance from leaf signals and a list of merges.
# leaves: an int is a cache leaf Z_i, a sequence is a delivery leaf X_d.
# merges: child id lists of the internal nodes, numbered after the leaves.
# Every node left without a parent is wired to the root.
def instance_from_merges(params, leaves, merges=()):
    nodes = []
    for v, signal in enumerate(leaves):
        if isinstance(signal, int):
            nodes.append(Node(v, NodeKind.CACHE, cache_id=signal))
        else:
            nodes.append(Node(v, NodeKind.DELIVERY, demand=DemandVector(tuple(signal))))
    parents = {}
    for children in merges:
        u = len(nodes)
        nodes.append(Node(u, NodeKind.INTERNAL))
        for c in children:
            if not 0 <= c < u or c in parents:
                raise MalformedTreeError('cannot merge node %d into %d' % (c, u))
            parents[c] = u
    root = len(nodes)
    nodes.append(Node(root, NodeKind.ROOT))
    for v in range(root):
        parents.setdefault(v, root)
    nodes = [replace(n, parent=parents.get(n.id)) for n in nodes]
    return ProblemInstance(params, Tree(tuple(nodes)))


##################################################################################
# OPERATIONS
##################################################################################
def _demand_violations(instance):
    found = []
    for v in instance.tree.delivery_leaves:
        demand = instance.tree.nodes[v].demand
        if demand is None:
            continue
        for problem in demand.problems(instance.params):
            found.append('delivery leaf %d %s' % (v, problem))
    return found


def _structural_violations(instance):
    tree = instance.tree
    params = instance.params
    found = []

    roots = [n.id for n in tree.nodes if n.kind == NodeKind.ROOT]
    if len(roots) != 1:
        found.append('expected exactly one root, found %d' % len(roots))
    for r in roots:
        if tree.nodes[r].parent is not None:
            found.append('root %d has an outgoing edge' % r)
        if tree.in_degree(r) != 1:
            found.append('root in-degree ≠ 1 (node %d has %d)' % (r, tree.in_degree(r)))

    for node in tree.nodes:
        if node.kind != NodeKind.ROOT and node.parent is None:
            found.append('node %d has no outgoing edge' % node.id)
        if node.is_leaf:
            if tree.in_degree(node.id) > 0:
                found.append('leaf %d has incoming edges' % node.id)
            if node.cache_id is not None and node.demand is not None:
                found.append('leaf %d carries both a cache id and a demand vector' % node.id)
        elif node.cache_id is not None or node.demand is not None:
            found.append('non-leaf node %d carries a signal' % node.id)
        if node.kind == NodeKind.INTERNAL and tree.in_degree(node.id) == 0:
            found.append('internal node %d has no incoming edges' % node.id)
        if node.kind == NodeKind.CACHE:
            if node.cache_id is None or not 1 <= node.cache_id <= params.num_users:
                found.append('cache leaf %d has cache id %s outside [1..%d]'
                             % (node.id, node.cache_id, params.num_users))
        if node.kind == NodeKind.DELIVERY and node.demand is None:
            found.append('delivery leaf %d has no demand vector' % node.id)

    try:
        tree.order
    except MalformedTreeError:
        found.append('cycle detected')
    return found


def validate(instance):
    """Returns every violated tree/instance invariant; empty when valid."""
    return _structural_violations(instance) + _demand_violations(instance)


def require_valid(instance):
    structural = _structural_violations(instance)
    if structural:
        raise InstanceValidationError(structural)
    demands = _demand_violations(instance)
    if demands:
        raise InputError('; '.join(demands))


def topological_order(tree):
    return list(tree.order)


def meeting_point(tree, a, b):
    if a == b:
        raise InputError('meeting point needs two distinct nodes, got %d twice' % a)
    tree.node(a)
    tree.node(b)
    try:
        u = nx.lowest_common_ancestor(tree.graph.reverse(copy=False), a, b)
    except nx.NetworkXError:
        raise MalformedTreeError('cycle detected')
    if u is None:
        raise MalformedTreeError('nodes %d and %d do not share a root path' % (a, b))
    return u


# Rebuilds a node list with dense ids, keeping the relative order given by keys
def _renumber(nodes, keys):
    ordered = sorted(nodes, key=lambda n: keys[n.id])
    new_id = {n.id: i for i, n in enumerate(ordered)}
    return Tree(tuple(replace(n, id=new_id[n.id],
                              parent=None if n.parent is None else new_id[n.parent])
                      for n in ordered))


def normalize_in_degree(instance):
    """Replaces every internal node with in-degree above two by a caterpillar
    and contracts internal nodes of in-degree one."""
    require_valid(instance)
    tree = instance.tree
    if all(tree.in_degree(u) == 2 for u in tree.internal_nodes):
        return instance

    nodes = {n.id: n for n in tree.nodes}
    keys = {n.id: (n.id, 0) for n in tree.nodes}
    next_id = len(tree.nodes)

    # Contract in-degree-1 internal nodes bottom-up
    for u in tree.order:
        node = nodes[u]
        if node.kind != NodeKind.INTERNAL or tree.in_degree(u) != 1:
            continue
        child = next(c for c, n in nodes.items() if n.parent == u)
        nodes[child] = replace(nodes[child], parent=node.parent)
        del nodes[u]
        logger.debug('contracted internal node %d', u)

    # Caterpillar: u'_1 <- {c1, c2}, u'_i <- {u'_(i-1), c_(i+1)}, u <- {u'_(m-2), c_m}
    for u in list(nodes):
        node = nodes[u]
        if node.kind != NodeKind.INTERNAL:
            continue
        kids = sorted(c for c, n in nodes.items() if n.parent == u)
        if len(kids) <= 2:
            continue
        chain_parent = None
        for i in range(len(kids) - 2):
            link = next_id
            next_id += 1
            nodes[link] = Node(link, NodeKind.INTERNAL)
            keys[link] = (keys[u][0], i)
            if i == 0:
                nodes[kids[0]] = replace(nodes[kids[0]], parent=link)
            else:
                nodes[chain_parent] = replace(nodes[chain_parent], parent=link)
            nodes[kids[i + 1]] = replace(nodes[kids[i + 1]], parent=link)
            chain_parent = link
        nodes[chain_parent] = replace(nodes[chain_parent], parent=u)
        keys[u] = (keys[u][0], len(kids) - 2)
        logger.debug('split node %d with in-degree %d into a chain', u, len(kids))

    return ProblemInstance(instance.params, _renumber(nodes.values(), keys))


def subtree(instance, v):
    """The instance formed by the subtree rooted at v, hung under a fresh root."""
    tree = instance.tree
    if tree.node(v).kind == NodeKind.ROOT:
        raise InputError('node %d is the root' % v)
    members = tree.subtree_nodes(v)
    new_id = {u: i for i, u in enumerate(members)}
    root = len(members)
    nodes = []
    for u in members:
        node = tree.nodes[u]
        parent = root if u == v else new_id[node.parent]
        nodes.append(replace(node, id=new_id[u], parent=parent))
    nodes.append(Node(root, NodeKind.ROOT))
    return ProblemInstance(instance.params, Tree(tuple(nodes)))


def cache_labels_saturated(instance):
    return instance.beta_hat == min(instance.beta, instance.params.num_users)


def random_instance(rng, params, alpha, beta, max_in_degree=2, distinct_caches=False):
    """Random in-tree on alpha delivery and beta cache leaves.

    rng is a numpy Generator. Internal nodes merge between two and
    max_in_degree of the current subtrees. With distinct_caches the cache
    ids cover min(beta, K) distinct users.
    """
    K = params.num_users
    leaves = []
    for _ in range(alpha):
        leaves.append(tuple(int(d) for d in rng.integers(1, params.num_files + 1, size=K)))
    if distinct_caches:
        ids = [int(i) + 1 for i in rng.permutation(K)[:min(beta, K)]]
        ids += [int(i) for i in rng.integers(1, K + 1, size=beta - len(ids))]
        ids = [ids[i] for i in rng.permutation(len(ids))]
    else:
        ids = [int(i) for i in rng.integers(1, K + 1, size=beta)]
    leaves.extend(ids)

    pool = list(range(len(leaves)))
    merges = []
    next_id = len(leaves)
    while len(pool) > 1:
        width = int(rng.integers(2, min(max_in_degree, len(pool)) + 1))
        picked = sorted(int(i) for i in rng.choice(len(pool), size=width, replace=False))
        merges.append([pool[i] for i in picked])
        pool = [p for i, p in enumerate(pool) if i not in picked] + [next_id]
        next_id += 1
    return instance_from_merges(params, leaves, merges)
