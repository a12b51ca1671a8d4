"""Brute-force reference behaviour: list decoding by codebook scan."""

import numpy as np
import pytest

from aglist import codec, curve as cv, oracle
from aglist.errors import BudgetExceeded


HERM2 = codec.code_create(cv.curve_create("hermitian", 2), 4)
RS7 = codec.code_create(cv.curve_create("rational", 8), 2)


class TestExhaustiveList:
    def test_codeword_alone_at_small_radius(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            msg = [int(v) for v in rng.integers(0, 4, 4)]
            word = codec.encode(HERM2, msg)
            assert oracle.exhaustive_list(HERM2, word, 1) == [word]

    def test_full_radius_returns_whole_codebook(self):
        got = oracle.exhaustive_list(HERM2, [0] * 7, 7)
        assert len(got) == 4**4
        assert len({tuple(w) for w in got}) == 4**4

    def test_sorted_by_distance_then_lex(self):
        rng = np.random.default_rng(1)
        rec = [int(v) for v in rng.integers(0, 4, 7)]
        got = oracle.exhaustive_list(HERM2, rec, 3)
        dist = lambda w: sum(a != b for a, b in zip(w, rec))
        keys = [(dist(w), w) for w in got]
        assert keys == sorted(keys)

    def test_budget_guard(self):
        big = codec.code_create(cv.curve_create("rational", 16), 6)  # 16^7 words
        with pytest.raises(BudgetExceeded):
            oracle.exhaustive_list(big, [0] * 15, 1)

    def test_weight_cap(self):
        rng = np.random.default_rng(2)
        rec = [int(v) for v in rng.integers(0, 4, 7)]
        for w in oracle.exhaustive_list(HERM2, rec, 2):
            assert sum(a != b for a, b in zip(w, rec)) <= 2


class TestTrueMinimumDistance:
    def test_hermitian_matches_designed(self):
        assert oracle.true_minimum_distance(HERM2) == 3

    def test_mds_code(self):
        # [7,3] over F8 is MDS: minimum distance exactly n-k+1 = 5
        assert (RS7.n, RS7.k) == (7, 3)
        assert oracle.true_minimum_distance(RS7) == 5

    def test_budget_guard(self):
        big = codec.code_create(cv.curve_create("rational", 16), 6)
        with pytest.raises(BudgetExceeded):
            oracle.true_minimum_distance(big)


class TestAgainstDecoder:
    def test_decoder_list_is_exact(self):
        rng = np.random.default_rng(3)
        params = codec.DecodeParams(1, 1, 1, tau=1)
        for _ in range(40):
            rec = [int(v) for v in rng.integers(0, 4, 7)]
            assert codec.decode(HERM2, rec, params).codewords() == \
                oracle.exhaustive_list(HERM2, rec, 1)
