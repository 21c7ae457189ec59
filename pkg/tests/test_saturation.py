# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 19:44:30 2026

Saturating construction, file reuse and the N_sat estimates.
"""

import pytest

from model import DemandVector, DomainError, InputError, NotFoundError, RefusalError, validate
from labeling import run_labeling
from saturation import (SearchLimits, balanced_split, build_saturating_instance, cross_recoveries,
                        enumerate_tree_shapes, estimate, nsat_exact_bruteforce, nsat_upper_analytic,
                        nsat_upper_best, nsat_upper_cdb, nsat_upper_construction, nsat_upper_recursive,
                        reuse_files, saturation_path)


def test_balanced_split():
    assert balanced_split(5, 3) == ((3, 1), (2, 2))
    assert balanced_split(2, 2) == ((1, 1), (1, 1))
    assert balanced_split(1, 1) == ((1, 0), (0, 1))


def test_cross_recoveries_clip_at_users():
    assert cross_recoveries(3, 2, 3, 2, 12) == 12
    assert cross_recoveries(1, 3, 1, 3, 3) == 0
    assert cross_recoveries(2, 1, 1, 1, 2) == 3


def test_raw_and_reused_construction():
    raw = build_saturating_instance(2, 2, 2)
    assert validate(raw) == []
    assert raw.params.num_files == 4
    assert [raw.tree.nodes[v].demand for v in raw.tree.delivery_leaves] == \
        [DemandVector((1, 2)), DemandVector((3, 4))]
    assert run_labeling(raw).lower_bound == 4

    reused = reuse_files(raw)
    assert reused.params.num_files == 3
    assert [reused.tree.nodes[v].demand for v in reused.tree.delivery_leaves] == \
        [DemandVector((1, 2)), DemandVector((3, 1))]
    assert run_labeling(reused).lower_bound == 4


def _gamma_sets_nested(instance):
    labeled = run_labeling(instance)
    tree = instance.tree
    for u in tree.internal_nodes:
        first, second = (labeled.gamma(c) for c in tree.children[u])
        if not (first <= second or second <= first):
            return False
    return True


@pytest.mark.parametrize('users', [2, 3, 5])
def test_reuse_nests_and_is_stable(users):
    for alpha in range(1, 6):
        for beta in range(1, 6):
            reused = reuse_files(build_saturating_instance(alpha, beta, users))
            assert _gamma_sets_nested(reused)
            # nothing left to rename on a second pass
            assert reuse_files(reused) == reused


def test_construction_numbering():
    tree = build_saturating_instance(3, 2, 2).tree
    assert tree.delivery_leaves == (0, 1, 2)
    assert tree.cache_leaves == (3, 4)
    assert tree.root == len(tree) - 1
    assert all(tree.in_degree(u) == 2 for u in tree.internal_nodes)


@pytest.mark.parametrize('users', [1, 2, 3, 4])
def test_construction_saturates(users):
    for alpha in range(1, 6):
        for beta in range(1, 6):
            raw = build_saturating_instance(alpha, beta, users)
            reused = reuse_files(raw)
            target = alpha * min(beta, users)
            assert run_labeling(raw).lower_bound == target
            assert run_labeling(reused).lower_bound == target
            assert reused.params.num_files <= raw.params.num_files
            assert reused.params.num_files == nsat_upper_recursive(alpha, beta, users)


@pytest.mark.parametrize('alpha, beta, users, expected', [
    (6, 4, 12, 17),
    (3, 2, 12, 5),
    (2, 2, 2, 3),
    (2, 2, 3, 3),
    (12, 8, 12, 65),
    (4, 8, 8, 22),
    (4, 4, 3, 7),
    (6, 2, 3, 9),
])
def test_recursive_estimate(alpha, beta, users, expected):
    assert nsat_upper_recursive(alpha, beta, users) == expected


def test_recursive_estimate_single_cache():
    for alpha in range(1, 10):
        assert nsat_upper_recursive(alpha, 1, 4) == alpha
    assert nsat_upper_recursive(0, 3, 2) == 0
    with pytest.raises(InputError):
        nsat_upper_recursive(-1, 2, 2)


def test_construction_matches_recursion():
    assert nsat_upper_construction(6, 4, 12) == 17
    assert nsat_upper_construction(4, 4, 3) == 7


def test_analytic_estimate():
    assert nsat_upper_analytic(6, 4, 12) == 19
    assert nsat_upper_analytic(2, 2, 2) == 4
    with pytest.raises(DomainError):
        nsat_upper_analytic(2, 3, 2)


def test_best_estimate():
    assert nsat_upper_best(6, 4, 12) == 17
    assert nsat_upper_best(12, 8, 12) == 65
    assert nsat_upper_best(0, 4, 12) == 0
    assert nsat_upper_best(3, 9, 2) <= 6


def test_comparison_instance_estimate():
    assert nsat_upper_cdb(4, 8, 8) == 26
    assert nsat_upper_cdb(2, 2, 2) == 3
    assert nsat_upper_cdb(1, 5, 5) == 5
    assert nsat_upper_cdb(4, 6, 8) is None
    assert nsat_upper_cdb(2, 4, 3) is None
    assert estimate(4, 8, 8).upper_cdb == 26
    assert estimate(6, 4, 12).upper_cdb is None
    for users in range(1, 10):
        for m in range(1, 5):
            for t in range(1, 4):
                if t * m <= users:
                    assert nsat_upper_best(m, t * m, users) <= t * (m * m - m + 1)
    assert nsat_upper_best(4, 8, 8) == 22


def test_saturation_path_adds_up():
    path = saturation_path(6, 4, 12)
    assert path[0] == (6, 4, 12)
    assert sum(step[2] for step in path) == 17


def test_tree_shapes_are_counted_once():
    counts = [sum(1 for _ in enumerate_tree_shapes(n)) for n in range(1, 7)]
    assert counts == [1, 1, 1, 2, 3, 6]
    with pytest.raises(InputError):
        enumerate_tree_shapes(0)


def test_bruteforce_small_cases():
    assert nsat_exact_bruteforce(1, 1, 1) == 1
    assert nsat_exact_bruteforce(2, 1, 2) == 2
    assert nsat_exact_bruteforce(2, 2, 2) == nsat_upper_construction(2, 2, 2) == 3
    assert nsat_exact_bruteforce(2, 2, 3) == 3


@pytest.mark.parametrize('alpha, beta, users', [
    (1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 2), (2, 2, 3), (1, 3, 3), (3, 1, 2), (2, 1, 1),
])
def test_bruteforce_never_exceeds_best_estimate(alpha, beta, users):
    assert nsat_exact_bruteforce(alpha, beta, users) <= nsat_upper_best(alpha, beta, users)


def test_bruteforce_limits():
    with pytest.raises(RefusalError):
        nsat_exact_bruteforce(3, 3, 3)
    with pytest.raises(NotFoundError) as caught:
        nsat_exact_bruteforce(2, 1, 2, SearchLimits(max_files=1))
    assert caught.value.max_bound == 1


def test_estimate():
    found = estimate(2, 2, 2)
    assert (found.upper_construction, found.upper_analytic, found.upper_trivial) == (3, 4, 4)
    assert found.exact is None
    assert estimate(2, 3, 2).upper_analytic is None
    assert estimate(1, 1, 1, exact=True).exact == 1
    with pytest.raises(InputError):
        estimate(0, 1, 1)
