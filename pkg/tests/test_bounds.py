# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 20:02:17 2026

Rates, lower bounds, the gap verifier and sweep records.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from model import InputError, Provenance, SystemParams
from saturation import balanced_split
from bounds import (CSV_HEADER, SearchConfig, achievable_corners, achievable_rate, best_known_bound,
                    cdb_bound, cdb_inequalities, cutset_bound, gap, han_bound, han_inequality_value,
                    proposed_bound, proposed_candidates, proposed_inequality, proposed_value,
                    record_at, sweep, sweep_grid, uncoded_rate, verify_gap_le_4, worker_count)
from Misc.rational import ceil_div


def test_achievable_corners():
    corners = achievable_corners(SystemParams(4, 3))
    assert [(p.cache, p.rate) for p in corners] == [
        (0, 3), (Fraction(4, 3), 1), (Fraction(8, 3), Fraction(1, 3)), (4, 0)]


def test_rates_at_one():
    params = SystemParams(4, 3)
    assert uncoded_rate(params, 1) == Fraction(9, 4)
    assert achievable_rate(params, 1) == Fraction(3, 2)
    assert achievable_rate(params, 4) == 0


def test_cutset_bound():
    assert cutset_bound(SystemParams(4, 3), 1) == 1
    assert cutset_bound(SystemParams(3, 3), 1) == Fraction(2, 3)
    assert cutset_bound(SystemParams(64, 12), Fraction(16, 3)) == Fraction(77, 27)
    assert cutset_bound(SystemParams(4, 3), 4) == 0


def test_split_inequality():
    params = SystemParams(64, 12)
    ineq = proposed_inequality(params, 12, 8, (6, 4))
    assert (ineq.bound, ineq.split, ineq.provenance) == (95, (6, 4), Provenance.PROPOSED)
    assert ineq.value_at(Fraction(16, 3)) == Fraction(157, 36)
    with pytest.raises(InputError):
        proposed_inequality(params, 12, 8, (12, 4))


def test_saturated_pair_ignores_split():
    ineq = proposed_inequality(SystemParams(64, 12), 6, 4, (3, 2))
    assert (ineq.bound, ineq.split) == (24, None)


def test_split_inequality_absent_below_threshold():
    assert proposed_inequality(SystemParams(2, 12), 12, 8, (6, 4)) is None


def test_proposed_bound_small_system():
    params = SystemParams(4, 3)
    value, ineq = proposed_bound(params, 1)
    assert value == Fraction(5, 4)
    assert ineq.value_at(1) == Fraction(5, 4)
    assert proposed_value(params, 1) == Fraction(5, 4)
    assert gap(params, 1) == Fraction(6, 5)


def test_proposed_bound_large_system():
    params = SystemParams(64, 12)
    M = Fraction(16, 3)
    assert proposed_value(params, M) >= Fraction(157, 36)
    assert achievable_rate(params, M) == Fraction(11, 2)
    assert proposed_value(params, M) >= cutset_bound(params, M)


@pytest.mark.parametrize('M', [0, 3, 6])
def test_proposed_meets_achievable(M):
    params = SystemParams(9, 3)
    assert proposed_value(params, M) == achievable_rate(params, M)


def test_candidates_respect_search_ranges():
    params = SystemParams(6, 3)
    narrow = proposed_candidates(params, SearchConfig(alpha_max=2, beta_max=2, include_cutset_pairs=False))
    assert all(q.alpha <= 2 and q.beta <= 2 for q in narrow)
    assert all(q.provenance == Provenance.PROPOSED for q in narrow)
    full = proposed_candidates(params, SearchConfig(full_split_enumeration=True))
    assert len(full) >= len(proposed_candidates(params, SearchConfig()))
    assert any(q.provenance == Provenance.CUTSET for q in full)


def test_full_split_search_never_worse():
    params = SystemParams(8, 4)
    for M in (0, 1, 2, Fraction(7, 2)):
        assert (proposed_value(params, M, SearchConfig(full_split_enumeration=True))
                >= proposed_value(params, M))


def test_han_terms():
    params = SystemParams(3, 3)
    assert han_inequality_value(params, 1, 1, 0) == Fraction(5, 3)
    assert han_inequality_value(params, 1, 4, 0) is None
    assert han_bound(params, 0) == 3


def test_cdb_parameters():
    found = cdb_inequalities(SystemParams(64, 8))
    by_family = {q.meta['family']: q.meta for q in found if q.meta['t'] == 2}
    assert by_family[2]['n'] == 4
    assert (by_family[2]['m'], by_family[2]['n_tilde']) == (4, 26)
    assert by_family[1]['m'] == 2


def test_gap_corners():
    params = SystemParams(4, 3)
    assert gap(params, 0) == 1
    assert gap(params, 4) == 1


def test_sweep_grid():
    grid = sweep_grid(SystemParams(4, 3), 5)
    assert grid == [0, 1, Fraction(4, 3), 2, Fraction(8, 3), 3, 4]
    with pytest.raises(InputError):
        sweep_grid(SystemParams(4, 3), 1)


def test_worker_count(monkeypatch):
    monkeypatch.delenv('CCBOUND_THREADS', raising=False)
    assert worker_count() == 1
    monkeypatch.setenv('CCBOUND_THREADS', '3')
    assert worker_count() == 3
    for bad in ('0', 'many'):
        monkeypatch.setenv('CCBOUND_THREADS', bad)
        with pytest.raises(InputError):
            worker_count()


def test_verify_gap_small_grid():
    report = verify_gap_le_4([(2, 2), (3, 3), (4, 3)], 5, threads=2)
    assert report.passed
    assert report.points == 19
    assert report.max_gap <= 4
    assert report.argmax is not None


def test_record_at():
    record = record_at(SystemParams(4, 3), 1)
    row = record.row()
    assert len(row) == len(CSV_HEADER)
    assert row[:5] == ['1', '9/4', '3/2', '1', '5/4']
    assert row[-1] == '6/5'
    assert record.as_dict(as_decimal=True)['LB_proposed'] == '1.25'


def test_sweep_is_sorted_and_deduplicated():
    params = SystemParams(4, 3)
    records = sweep(params, [2, 0, 2, Fraction(4, 3)], threads=2)
    assert [r.cache for r in records] == [0, Fraction(4, 3), 2]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(1, 6), st.integers(0, 12))
def test_bounds_stay_below_achievable(N, K, step):
    params = SystemParams(N, K)
    M = Fraction(step * N, 12)
    rate = achievable_rate(params, M)
    assert cutset_bound(params, M) <= rate
    assert proposed_value(params, M) <= rate
    assert proposed_value(params, M) == proposed_bound(params, M)[0]
    assert best_known_bound(params, M) >= proposed_value(params, M)
    assert han_bound(params, M) <= rate
    assert cdb_bound(params, M) <= rate


@pytest.mark.parametrize('N, K', [(4, 3), (6, 6), (9, 3), (12, 5), (16, 30)])
@pytest.mark.parametrize('evaluator', [cutset_bound, proposed_value, han_bound, cdb_bound])
def test_bounds_nonincreasing_and_convex_in_cache(evaluator, N, K):
    params = SystemParams(N, K)
    values = [evaluator(params, Fraction(i * N, 24)) for i in range(25)]
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert all(a + c >= 2 * b for a, b, c in zip(values, values[1:], values[2:]))


def test_balanced_split_beats_han_for_large_pairs():
    # pairs with 1/alpha + 1/beta <= 0.4, beta <= K and alpha*beta > N
    checked = 0
    for N in range(10, 41):
        for K in range(5, 13):
            params = SystemParams(N, K)
            for alpha in range(3, 13):
                for beta in range(3, K + 1):
                    if 5 * (alpha + beta) > 2 * alpha * beta or alpha * beta <= N:
                        continue
                    if alpha > ceil_div(N, beta):
                        continue
                    (split, _) = balanced_split(alpha, beta)
                    ours = proposed_inequality(params, alpha, beta, split)
                    assert ours is not None
                    assert ours.value_at(0) >= han_inequality_value(params, alpha, beta, 0)
                    checked += 1
    assert checked > 0
