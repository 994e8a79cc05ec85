# -*- coding: utf-8 -*-

import random
from fractions import Fraction
from math import floor, isfinite, log2

import pytest

from zfeedback.DataClasses import CodeParams
from zfeedback.Encoder import select_params
from zfeedback.zf_bounds import construction_rate, curve_to_csv, emit_curve, error_distributions, \
    gamma_factors, lemma2_closed_form, lemma2_closed_form_log2, lemma2_guarantee, lower_rate, \
    min_product_balanced, min_product_bruteforce, min_product_dp, upper_rate, upper_rate_gridscan

TAU_GRID = [round(0.05 * i, 2) for i in range(1, 20)]


@pytest.fixture(scope='module')
def upper_on_grid():
    return [upper_rate(tau) for tau in TAU_GRID]


class TestLemma2:
    def test_small_example(self, small_params):
        gammas = small_params.gammas
        assert sorted(d.counts for d in error_distributions(2, 1, 1)) == [(0, 2), (1, 1), (2, 0)]
        assert sorted(d.product(gammas) for d in error_distributions(2, 1, 1)) == \
            [Fraction(1), Fraction(3, 2), Fraction(9, 4)]
        assert min_product_dp(gammas, 2, 1) == 1
        assert lemma2_guarantee(small_params) == 8

    def test_budget_includes_p(self):
        # one subblock may lose all p address ones even when t = 0
        params = CodeParams(delta=2, p=1, epsilon='1/4', k=2, t=0)
        assert min_product_dp(params.gammas, 2, 0) == Fraction(3, 2)
        assert lemma2_guarantee(params) == 12
        assert lemma2_guarantee(params) <= floor(params.A * params.gammas[0] ** params.k)

    @pytest.mark.parametrize('delta, p, epsilon, k, t', [(2, 1, '1/4', 2, 3), (4, 3, '1/8', 3, 9), (3, 1, '1/2', 2, 5)])
    def test_minimum_is_one_at_boundary(self, delta, p, epsilon, k, t):
        params = CodeParams(delta=delta, p=p, epsilon=epsilon, k=k, t=t)
        assert lemma2_guarantee(params) == params.A

    def test_dp_matches_bruteforce_and_balanced(self):
        for p in range(1, 5):
            for delta in (p + 1, p + 2):
                epsilon = (1 - Fraction(p, delta)) / 2
                gammas = gamma_factors(delta, p, epsilon)
                for k in range(1, 9):
                    for t in range(0, min(12, delta * k) + 1):
                        brute = min_product_bruteforce(gammas, k, t)
                        assert min_product_dp(gammas, k, t) == brute
                        assert min_product_balanced(gammas, k, t) == brute

    def test_large_schedule_uses_closed_minimum(self):
        params = select_params(0.5, 12, 400)
        assert lemma2_guarantee(params) == floor(params.A * min_product_balanced(params.gammas, params.k, params.t))

    def test_closed_form_examples(self, small_params):
        assert lemma2_closed_form(small_params) == pytest.approx(2.0)
        params = CodeParams(delta=2, p=1, epsilon='1/4', k=0, t=0)
        assert lemma2_closed_form(params) == pytest.approx(params.A - 1)

    def test_closed_form_below_guarantee(self):
        rng = random.Random(20240501)
        checked = 0
        while checked < 200:
            delta = rng.randint(2, 8)
            p = rng.randint(1, delta - 1)
            epsilon = (1 - Fraction(p, delta)) * Fraction(rng.randint(1, 9), 10)
            k = rng.randint(0, 10)
            t = rng.randint(0, delta * k)
            params = CodeParams(delta=delta, p=p, epsilon=epsilon, k=k, t=t)
            guarantee = lemma2_guarantee(params)
            assert lemma2_closed_form(params) <= guarantee + 1 + 1e-9 * guarantee
            checked += 1

    def test_closed_form_at_scale(self):
        params = select_params(0.5, 16, 256)
        assert params.p == 12
        exponent = lemma2_closed_form_log2(params)
        assert isfinite(exponent)
        assert exponent <= log2(lemma2_guarantee(params) + 1) + 1e-9

    def test_schedule_rates(self):
        for tau in (0.3, 0.5, 0.7):
            for delta, k in ((8, 64), (12, 144), (16, 256)):
                assert construction_rate(select_params(tau, delta, k)) > 0
        for tau in (0.3, 0.5):
            rates = [construction_rate(select_params(tau, 8, k)) for k in (64, 256, 1024)]
            assert rates == sorted(rates)
            assert rates[-1] < lower_rate(tau)


class TestRates:
    def test_lower_values(self):
        assert lower_rate(0) == 1.0
        assert lower_rate(1) == 0.0
        assert lower_rate(1 / 3) == pytest.approx(0.251629, abs=1e-6)
        assert all(lower_rate(i / 100) > 0 for i in range(1, 100))
        with pytest.raises(ValueError):
            lower_rate(1.01)

    def test_upper_near_zero(self):
        assert 0.99 <= upper_rate(1e-4) <= 1.0

    def test_upper_domain(self):
        with pytest.raises(ValueError):
            upper_rate(0)
        with pytest.raises(ValueError):
            upper_rate_gridscan(1)

    def test_upper_dominates_lower(self, upper_on_grid):
        for tau, upper in zip(TAU_GRID, upper_on_grid):
            assert upper >= lower_rate(tau) - 1e-9
            assert upper <= 1 - tau + 1e-12

    def test_upper_non_increasing(self, upper_on_grid):
        assert all(a >= b for a, b in zip(upper_on_grid, upper_on_grid[1:]))

    @pytest.mark.parametrize('tau', [0.2, 0.5, 0.8])
    def test_upper_matches_gridscan(self, tau):
        assert upper_rate(tau) == pytest.approx(upper_rate_gridscan(tau), abs=1e-5)


class TestCurve:
    def test_three_points(self):
        curve = emit_curve([0.25, 0.5, 0.75])
        assert len(curve) == 3
        lowers = [lower for _, lower, _ in curve.samples]
        assert all(lower > 0 for lower in lowers)
        assert lowers == sorted(lowers, reverse=True)

    def test_empty(self):
        assert len(emit_curve([])) == 0
        assert curve_to_csv(emit_curve([])) == 'tau,lower,upper\n'

    def test_csv_format(self):
        text = curve_to_csv(emit_curve([0.5]))
        header, row = text.splitlines()
        assert header == 'tau,lower,upper'
        tau, lower, upper = row.split(',')
        assert tau == '0.5'
        assert float(lower) == pytest.approx(lower_rate(0.5), rel=1e-8)
        assert len(lower.replace('.', '').lstrip('0')) <= 9
        assert curve_to_csv(emit_curve([0.5])) == text
