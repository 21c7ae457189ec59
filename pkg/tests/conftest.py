# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 19:05:12 2026

Shared instances: the two-pair instance, the four-delivery instance with
three users and a single (cache, delivery) pair.
"""

import pytest

from model import SystemParams, instance_from_merges


@pytest.fixture
def two_pairs():
    # Z1 + X(1,2,3) and Z2 + X(3,1,2) joined under u*; L = 4
    return instance_from_merges(SystemParams(3, 3), [1, (1, 2, 3), 2, (3, 1, 2)],
                                [[0, 1], [2, 3], [4, 5]])


@pytest.fixture
def four_deliveries():
    # N=4, K=3, alpha=beta=4; L = 9, three augmentations short of saturation
    leaves = [(1, 2, 3), (3, 1, 4), (2, 4, 1), (1, 4, 3), 1, 2, 3, 1]
    merges = [[0, 4], [1, 5], [2, 6], [3, 7], [8, 9], [10, 11], [12, 13]]
    return instance_from_merges(SystemParams(4, 3), leaves, merges)


@pytest.fixture
def single_pair():
    return instance_from_merges(SystemParams(2, 2), [1, (1, 2)], [[0, 1]])
