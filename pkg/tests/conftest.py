# -*- coding: utf-8 -*-

import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from zfeedback.DataClasses import CodeParams  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: long running benchmark or full table')


@pytest.fixture
def small_params() -> CodeParams:
    """delta=2, p=1, epsilon=1/4, A=8, k=2, t=1: n=12 and 8 messages."""
    return CodeParams(delta=2, p=1, epsilon='1/4', k=2, t=1)


@pytest.fixture
def three_phase_params() -> CodeParams:
    """Overloaded instance whose sessions reach partitioning, weight and uncoded."""
    return CodeParams(delta=2, p=1, epsilon='1/4', k=2, t=1, M=22, check_guarantee=False)
