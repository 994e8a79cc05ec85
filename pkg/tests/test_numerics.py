# -*- coding: utf-8 -*-

from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zfeedback.zf_numerics import CwAddress, binomial, binomial_estimate, cw_rank, cw_supersets, \
    cw_unrank, entropy, entropy_array, weight


class TestEntropy:
    def test_values(self):
        assert entropy(0.5) == 1.0
        assert entropy(0) == 0.0
        assert entropy(1) == 0.0
        assert entropy(1 / 3) == pytest.approx(0.9182958340544896, abs=1e-12)

    @pytest.mark.parametrize('x', [-0.1, 1.5])
    def test_domain(self, x):
        with pytest.raises(ValueError):
            entropy(x)

    def test_symmetric_and_concave(self):
        grid = np.linspace(0, 1, 1001)
        values = np.array([entropy(x) for x in grid])
        assert np.allclose(values, values[::-1], atol=1e-12)
        # second differences of a concave function are never positive
        assert np.all(np.diff(values, 2) <= 1e-12)

    def test_array_matches_scalar(self):
        grid = np.linspace(0, 1, 101)
        assert np.allclose(entropy_array(grid), [entropy(x) for x in grid])
        with pytest.raises(ValueError):
            entropy_array(np.array([0.2, 1.2]))


class TestBinomial:
    def test_values(self):
        assert binomial(5, 2) == 10
        assert binomial(17, 0) == 1
        assert binomial(40, 20) == 137846528820
        assert binomial(3, 5) == 0

    def test_pascal(self):
        for u in range(1, 65):
            for v in range(1, u + 1):
                assert binomial(u, v) == binomial(u - 1, v) + binomial(u - 1, v - 1)

    def test_entropy_estimate_encloses(self):
        for u in range(2, 61):
            for v in range(1, u):
                lower, upper = binomial_estimate(u, v)
                assert lower <= binomial(u, v) * (1 + 1e-12)
                assert binomial(u, v) <= upper * (1 + 1e-12)

    def test_estimate_domain(self):
        with pytest.raises(ValueError):
            binomial_estimate(5, 5)
        with pytest.raises(ValueError):
            binomial_estimate(5, 0)


class TestAddresses:
    @pytest.mark.parametrize('bits, rank', [('0011', 0), ('0101', 1), ('0110', 2),
                                            ('1001', 3), ('1010', 4), ('1100', 5)])
    def test_rank_follows_numeric_order(self, bits, rank):
        assert cw_rank(CwAddress(bits, 2)) == rank
        assert cw_unrank(rank, 4, 2).bits == bits

    def test_invalid_address(self):
        with pytest.raises(ValueError):
            CwAddress('0111', 2)
        with pytest.raises(ValueError):
            CwAddress('1111', 4)
        with pytest.raises(ValueError):
            CwAddress('01a1', 2)

    def test_unrank_out_of_range(self):
        with pytest.raises(ValueError):
            cw_unrank(6, 4, 2)
        with pytest.raises(ValueError):
            cw_unrank(-1, 4, 2)

    def test_rank_unrank_exhaustive(self):
        for delta in range(2, 17):
            for p in range(1, delta):
                for r in range(binomial(delta, p)):
                    assert cw_rank(cw_unrank(r, delta, p)) == r

    @given(st.integers(min_value=2, max_value=40).flatmap(
        lambda delta: st.tuples(st.just(delta), st.integers(min_value=1, max_value=delta - 1))).flatmap(
        lambda dp: st.tuples(st.just(dp[0]), st.just(dp[1]),
                             st.integers(min_value=0, max_value=binomial(dp[0], dp[1]) - 1))))
    def test_rank_unrank_large(self, args):
        delta, p, r = args
        address = cw_unrank(r, delta, p)
        assert weight(address.bits) == p
        assert cw_rank(address) == r

    def test_supersets_examples(self):
        assert [a.bits for a in cw_supersets('0110', 2)] == ['0110']
        assert [a.bits for a in cw_supersets('0100', 2)] == ['0101', '0110', '1100']
        assert len(cw_supersets('0000', 2)) == 6
        with pytest.raises(ValueError):
            cw_supersets('0111', 2)

    def test_superset_counts(self):
        for delta in range(2, 11):
            for word in product('01', repeat=delta):
                word = ''.join(word)
                for p in range(max(1, weight(word)), delta):
                    found = cw_supersets(word, p)
                    e = p - weight(word)
                    assert len(found) == binomial(delta - p + e, e)
                    ranks = [cw_rank(a) for a in found]
                    assert ranks == sorted(ranks)
                    assert all(int(a.bits, 2) & int(word, 2) == int(word, 2) for a in found)
