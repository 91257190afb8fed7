#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Testes contra os oráculos
"""

import math

import numpy as np
import pytest

from services.calculus import GridFunction, build_grid, sample
from services.errors import DomainError, NotInScale
from services.fractional import frac_integral, frac_integral_grid
from services.oracle import brute_force_frac_integral, classical_rl_derivative_power, classical_rl_power
from services.timescale import from_points, interval

SQRT_PI = math.sqrt(math.pi)


def test_brute_force_examples():
    ones = [1.0] * 5
    assert brute_force_frac_integral([0, 1, 2, 3, 4], ones, 0, 0.5, 2) == pytest.approx((1 + 2 ** -0.5) / SQRT_PI, rel=1e-14)
    assert brute_force_frac_integral([0, 1, 2, 3, 4], ones, 0, 0.5, 0) == 0.0
    assert brute_force_frac_integral([0, 2], [1.0, 1.0], 0, 0.5, 2) == pytest.approx(2 * 2 ** -0.5 / SQRT_PI, rel=1e-14)
    with pytest.raises(NotInScale):
        brute_force_frac_integral([0, 1, 2], [1.0] * 3, 0, 0.5, 1.5)


def test_classical_examples():
    assert classical_rl_power(0.5, 0, 1, 0) == pytest.approx(2 / SQRT_PI, rel=1e-14)
    assert classical_rl_power(0.5, 1, 1, 0) == pytest.approx(0.752252, abs=1e-6)
    assert classical_rl_power(0.5, 2, 3, 3) == 0.0
    with pytest.raises(DomainError):
        classical_rl_power(0.5, -1, 1, 0)
    assert classical_rl_derivative_power(0.5, 1, 1, 0) == pytest.approx(2 / SQRT_PI, rel=1e-14)
    assert classical_rl_derivative_power(0.5, -0.5, 2, 0) == 0.0


@pytest.mark.parametrize("seed", range(20))
def test_discrete_exactness(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 51))
    points = np.sort(rng.choice(np.arange(0, 500), size=n, replace=False)) * rng.uniform(0.01, 0.5)
    T = from_points(points)
    grid = build_grid(T, 1.0)
    values = rng.uniform(0.0, 5.0, len(grid))
    h = GridFunction(grid, values)
    alpha = float(rng.uniform(0.05, 0.95))
    a = float(grid.nodes[int(rng.integers(0, len(grid)))])

    computed = frac_integral_grid(h, a, alpha)
    for t, value in zip(computed.nodes, computed.values):
        reference = brute_force_frac_integral(list(grid.nodes), list(values), a, alpha, float(t))
        assert abs(value - reference) <= 1e-13 * (1 + abs(reference))


def test_classical_limit_constants_and_linear():
    T = interval(0, 1)
    ones = sample(T, "1", step=1e-3)
    line = sample(T, "t", step=1e-3)
    assert frac_integral(ones, 0, 0.5, 1) == pytest.approx(2 / SQRT_PI, abs=1e-4)
    assert frac_integral(line, 0, 0.5, 1) == pytest.approx(math.gamma(2) / math.gamma(2.5), abs=1e-4)


@pytest.mark.parametrize("power", [1.5, 2.0, 3.0])
def test_classical_limit_error_decreases(power):
    T = interval(0, 1)
    errors = []
    for step in (1e-2, 5e-3, 2.5e-3, 1e-3):
        h = sample(T, f"t^{power}", step=step)
        errors.append(abs(frac_integral(h, 0, 0.5, 1) - classical_rl_power(0.5, power, 1.0)))
    assert all(later < earlier for earlier, later in zip(errors, errors[1:]))
    assert errors[-1] <= 1e-4
    # ordem observada ≥ 1
    assert math.log(errors[0] / errors[-1]) / math.log(10) >= 1
