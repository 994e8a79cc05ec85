# -*- coding: utf-8 -*-

import random
import statistics
import time

import pytest

from zfeedback.Encoder import select_params
from zfeedback.zf_channel import random_adversary, run_session


def median_session_time(params, repeats=20):
    rng = random.Random(params.k)
    timings = []
    for seed in range(repeats):
        m = rng.randrange(params.M)
        start = time.perf_counter()
        decoded, _ = run_session(params, m, random_adversary(seed))
        timings.append(time.perf_counter() - start)
        assert decoded == m
    return statistics.median(timings)


@pytest.mark.slow
def test_session_time_grows_linearly():
    short, long = select_params(0.5, 12, 8200), select_params(0.5, 12, 16550)
    assert 1.9 < long.n / short.n < 2.1
    assert median_session_time(long) / median_session_time(short) <= 2.5
