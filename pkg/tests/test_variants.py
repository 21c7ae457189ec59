# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 20:21:40 2026

Multi-request and device-to-device bounds.
"""

from fractions import Fraction

import pytest

from model import DomainError, InfeasibleError, InputError, Provenance, SystemParams
from bounds import achievable_rate, proposed_value
from variants import (MultiRequestParams, d2d_bound, multirequest_achievable, multirequest_bound,
                      multirequest_candidates, multirequest_gap, multirequest_gap_verify,
                      multirequest_inequality, multirequest_nsat)


def test_requests_per_user_must_be_positive():
    with pytest.raises(InputError):
        MultiRequestParams(SystemParams(4, 3), 0)


def test_achievable_scales_with_requests():
    params = SystemParams(4, 3)
    assert multirequest_achievable(MultiRequestParams(params, 2), 1) == 2 * achievable_rate(params, 1)


def test_multirequest_inequality():
    mr_params = MultiRequestParams(SystemParams(64, 12), 2)
    assert multirequest_nsat(mr_params, 1, 6) == 12
    ineq = multirequest_inequality(mr_params, 1, 6)
    assert (ineq.alpha, ineq.beta, ineq.bound) == (1, 6, 24)
    assert ineq.provenance == Provenance.MULTIREQUEST
    assert ineq.meta == {'requests': 2, 'n0': 12}


def test_multirequest_inequality_edges():
    small = MultiRequestParams(SystemParams(2, 12), 2)
    assert multirequest_inequality(small, 1, 6) is None
    with pytest.raises(DomainError):
        multirequest_inequality(small, 1, 13)
    with pytest.raises(InputError):
        multirequest_inequality(small, 0, 1)


def test_single_request_reduces_to_halved_form():
    mr_params = MultiRequestParams(SystemParams(40, 6), 1)
    ineq = multirequest_inequality(mr_params, 2, 3)
    n0 = (2 * 2 * 3 + 2 + 3) // 3
    assert ineq.bound == min(2 * 2 * 3, 2 * 3 + Fraction(40 - n0, 2))


def test_candidates_include_region_bound():
    mr_params = MultiRequestParams(SystemParams(5, 3), 2)
    found = multirequest_candidates(mr_params)
    assert any((q.alpha, q.beta, q.bound) == (3, 1, 5) for q in found)
    assert any(q.provenance == Provenance.CUTSET for q in found)


def test_multirequest_bound_dominates_single_request():
    params = SystemParams(6, 4)
    mr_params = MultiRequestParams(params, 3)
    for M in (0, 1, Fraction(3, 2), 6):
        assert multirequest_bound(mr_params, M) >= proposed_value(params, M)
        assert multirequest_bound(mr_params, M) <= multirequest_achievable(mr_params, M)


def test_multirequest_gap_at_corners():
    mr_params = MultiRequestParams(SystemParams(4, 3), 2)
    assert multirequest_gap(mr_params, 4) == 1
    assert multirequest_gap(mr_params, 0) >= 1


def test_multirequest_gap_verify():
    reports = multirequest_gap_verify([(4, 3), (3, 3)], [1, 2], threads=2)
    assert sorted(reports) == [1, 2]
    assert reports[1].points == 8
    assert reports[1].passed


def test_d2d_needs_enough_cache():
    params = SystemParams(4, 3)
    with pytest.raises(InfeasibleError):
        d2d_bound(params, 1)
    assert d2d_bound(params, 2) == proposed_value(params, 2)
