#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Testes de gama e beta
"""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from services.errors import DomainError
from services.specfun import beta, gamma, log_gamma


def test_known_values():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert gamma(5) == 24.0
    assert gamma(1.5) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-12)
    assert beta(1, 1) == pytest.approx(1.0, rel=1e-12)
    assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-12)
    assert beta(2, 3) == pytest.approx(1 / 12, rel=1e-12)


@pytest.mark.parametrize("n", range(0, 21))
def test_factorials(n):
    assert gamma(n + 1) == pytest.approx(math.factorial(n), rel=1e-10)


def test_poles_and_negative_arguments():
    for x in (0, -1, -2, -7):
        with pytest.raises(DomainError):
            gamma(x)
    assert gamma(-0.5) == pytest.approx(-2 * math.sqrt(math.pi), rel=1e-12)
    with pytest.raises(DomainError):
        beta(0, 1)
    with pytest.raises(DomainError):
        beta(-1, 2)
    with pytest.raises(DomainError):
        gamma(200.5)


@pytest.mark.parametrize("x", np.linspace(0.01, 30, 60))
def test_recurrence_and_against_math(x):
    assert gamma(x + 1) / (x * gamma(x)) == pytest.approx(1.0, abs=1e-12)
    assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-12)
    assert log_gamma(x) == pytest.approx(math.lgamma(x), abs=1e-11)


@pytest.mark.parametrize("x, y", [(x, y) for x in np.linspace(0.1, 8, 10) for y in np.linspace(0.2, 9, 5)])
def test_beta_identity(x, y):
    assert beta(x, y) * gamma(x + y) == pytest.approx(gamma(x) * gamma(y), rel=1e-10)


@given(st.floats(min_value=0.01, max_value=200), st.floats(min_value=0.01, max_value=200))
def test_beta_symmetric(x, y):
    assert beta(x, y) == beta(y, x)


def test_beta_log_space_large_arguments():
    expected = math.exp(math.lgamma(100) + math.lgamma(90) - math.lgamma(190))
    assert beta(100, 90) == pytest.approx(expected, rel=1e-10)
