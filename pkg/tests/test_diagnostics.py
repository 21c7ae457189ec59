# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 21:04:55 2026

Property suites on small, seeded runs.
"""

import numpy as np
import pytest

import diagnostics
from diagnostics import SUITES, SuiteResult, draw_instance, run_suites, verifyConfig
from model import SystemParams, validate
from bounds import sweep_grid


@pytest.fixture
def small_grids(monkeypatch):
    monkeypatch.setattr(verifyConfig.gap, 'pairRange', (2, 4))
    monkeypatch.setattr(verifyConfig.gap, 'points', 5)
    monkeypatch.setattr(verifyConfig.nsat, 'gridMax', 6)
    monkeypatch.setattr(verifyConfig.nsat, 'labelGridMax', 4)
    monkeypatch.setattr(verifyConfig.identities, 'gridMax', 6)
    monkeypatch.setattr(verifyConfig.multirequest, 'pairRange', (2, 5))


def test_every_listed_suite_exists():
    assert set(verifyConfig.suites) == set(SUITES)


def test_draw_instance_is_valid_and_binary():
    rng = np.random.default_rng(11)
    for _ in range(20):
        instance = draw_instance(rng)
        assert validate(instance) == []
        assert all(instance.tree.in_degree(u) == 2 for u in instance.tree.internal_nodes)


@pytest.mark.parametrize('name', ['psi', 'permute', 'augment', 'newfiles', 'union'])
def test_random_suites_pass(name):
    (result,) = run_suites([name], seed=7, trials=40)
    assert result.passed, result.failures


def test_grid_suites_pass(small_grids):
    for result in run_suites(['identities', 'gap', 'nsat', 'multirequest'], seed=0, trials=1):
        assert result.passed, result.failures
        assert result.checked > 0


def test_streams_do_not_depend_on_selection():
    alone = run_suites(['permute'], seed=5, trials=15)[0]
    together = run_suites(['psi', 'permute'], seed=5, trials=15)[1]
    assert alone == together


def test_failures_carry_instance_json(two_pairs):
    result = SuiteResult('psi')
    result.fail('example failure', two_pairs)
    result.fail('no instance')
    assert not result.passed
    assert result.failures[0][1].startswith('{')
    assert result.failures[1][1] is None


@pytest.mark.slow
def test_full_gap_suite():
    assert diagnostics.gap_suite().passed


def test_pair_range_override_reaches_ranged_suites():
    gap, multirequest = run_suites(['gap', 'multirequest'], seed=0, trials=1, pairs=(3, 3))
    assert gap.passed and multirequest.passed
    # (3, 3) sweeps corners 0, 1, 2, 3 once per request count
    assert multirequest.checked == 4 * len(verifyConfig.multirequest.requests)
    assert gap.checked == len(sweep_grid(SystemParams(3, 3), verifyConfig.gap.points))


@pytest.mark.slow
def test_full_multirequest_suite():
    result = diagnostics.multirequest_suite()
    assert result.passed, result.failures
