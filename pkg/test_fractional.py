#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Testes dos operadores fracionários
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from services.calculus import GridFunction, build_grid, delta_derivative, delta_integral, sample
from services.errors import BadRange, InvalidOrder, NotInScale, OutsideKappa, UseIntegerCalculus
from services.fractional import (
    FracOrder,
    check_representable,
    frac_derivative,
    frac_derivative_grid,
    frac_integral,
    frac_integral_grid,
    verify_corollary,
    verify_left_inverse,
    verify_right_inverse,
    verify_semigroup,
)
from services.oracle import classical_rl_derivative_power, classical_rl_power
from services.timescale import Interval, Point, canonicalize, from_points, integer_range, interval

SQRT_PI = math.sqrt(math.pi)


@pytest.fixture(scope="module")
def unit_interval():
    return interval(0, 1)


@pytest.fixture
def ints():
    return integer_range(0, 4)


def test_order_validation():
    assert FracOrder(1.5).integer_part == 1
    assert FracOrder(1.5).fraction == pytest.approx(0.5)
    assert FracOrder(-0.5).is_negative
    with pytest.raises(InvalidOrder):
        FracOrder(0)
    with pytest.raises(InvalidOrder):
        FracOrder(-1.5)
    with pytest.raises(InvalidOrder):
        FracOrder(float("nan"))
    with pytest.raises(UseIntegerCalculus):
        FracOrder(2)


def test_frac_integral_discrete_examples(ints):
    h = sample(ints, "1", step=1)
    assert frac_integral(h, 0, 0.5, 1) == pytest.approx(1 / SQRT_PI, rel=1e-13)
    assert frac_integral(h, 0, 0.5, 2) == pytest.approx((1 + 2 ** -0.5) / SQRT_PI, rel=1e-13)
    assert frac_integral(h, 0, 0.5, 0) == 0.0


def test_frac_integral_continuous_example(unit_interval):
    h = sample(unit_interval, "1", step=1e-3)
    assert frac_integral(h, 0, 0.5, 1) == pytest.approx(2 / SQRT_PI, abs=1e-4)


def test_frac_integral_errors(ints):
    h = sample(ints, "1", step=1)
    with pytest.raises(BadRange):
        frac_integral(h, 2, 0.5, 1)
    with pytest.raises(NotInScale):
        frac_integral(h, 0, 0.5, 2.5)
    with pytest.raises(UseIntegerCalculus):
        frac_integral(h, 0, 1, 2)


def test_frac_integral_higher_order(unit_interval):
    h = sample(unit_interval, "t", step=1e-2)
    expected = classical_rl_power(1.5, 1, 1.0)
    assert frac_integral(h, 0, 1.5, 1) == pytest.approx(expected, abs=1e-10)


def test_lower_limit_inside_scale():
    T = canonicalize([Interval(0, 1), Point(2), Interval(3, 4)])
    h = sample(T, "1", step=0.01)
    swept = frac_integral_grid(h, 1, 0.5)
    assert swept.nodes[0] == 1.0
    assert swept.values[0] == 0.0
    # de 1 a 2 só há o salto μ(1) = 1
    assert swept.at(2) == pytest.approx(1 / SQRT_PI, rel=1e-13)


def test_frac_derivative_examples(unit_interval, ints):
    h = sample(unit_interval, "t", step=1e-3)
    assert frac_derivative(h, 0, 0.5, 1) == pytest.approx(2 / SQRT_PI, abs=1e-3)
    ones = sample(ints, "1", step=1)
    assert frac_derivative(ones, 0, 0.5, 1) == pytest.approx(2 ** -0.5 / SQRT_PI, rel=1e-13)
    assert frac_derivative(ones, 0, -0.5, 3) == frac_integral(ones, 0, 0.5, 3)
    assert frac_integral(ones, 0, -0.5, 2) == frac_derivative(ones, 0, 0.5, 2)
    with pytest.raises(OutsideKappa):
        frac_derivative(ones, 0, 0.5, 4)


@pytest.mark.parametrize("scale", [
    integer_range(0, 6),
    interval(0, 1),
    canonicalize([Interval(0, 1), Point(1.5), Interval(2, 3)]),
    from_points([0, 0.3, 0.5, 1.25, 2]),
])
def test_derivative_is_literal_composition(scale):
    h = sample(scale, "exp(-t) + t^2", step=0.05)
    F = frac_integral_grid(h, scale.min, 1.0 - 0.7)
    for t in F.nodes[:-1]:
        assert frac_derivative(h, scale.min, 0.7, t) == delta_derivative(F, t)


def test_threads_do_not_change_results(unit_interval):
    h = sample(unit_interval, "sin(3*t) + 1", step=1e-2)
    single = frac_integral_grid(h, 0, 0.4, threads=1)
    pooled = frac_integral_grid(h, 0, 0.4, threads=4)
    assert np.array_equal(single.values, pooled.values)


def test_higher_order_derivative(unit_interval):
    h = sample(unit_interval, "t^2", step=1e-3)
    expected = classical_rl_derivative_power(1.5, 2, 1.0)
    assert frac_derivative(h, 0, 1.5, 1) == pytest.approx(expected, abs=1e-3)
    swept = frac_derivative_grid(h, 0, 0.5)
    assert swept.at(0.5) == pytest.approx(classical_rl_derivative_power(0.5, 2, 0.5), abs=1e-3)


# Identidades

def test_semigroup_continuous_and_refinement(unit_interval):
    fine = verify_semigroup(sample(unit_interval, "1", step=1e-3), 0, 0.5, 0.5)
    coarse = verify_semigroup(sample(unit_interval, "1", step=2e-3), 0, 0.5, 0.5)
    assert fine <= 5e-3
    assert fine < coarse


def test_semigroup_fails_on_integers():
    h = sample(integer_range(0, 2), "1", step=1)
    assert verify_semigroup(h, 0, 0.5, 0.5) == pytest.approx(2 - 1 / math.pi, abs=1e-9)
    assert verify_semigroup(sample(integer_range(0, 2), "0", step=1), 0, 0.5, 0.5) == 0.0


def test_left_inverse(unit_interval):
    fine = verify_left_inverse(sample(unit_interval, "t", step=1e-3), 0, 0.5)
    coarse = verify_left_inverse(sample(unit_interval, "t", step=2e-3), 0, 0.5)
    assert fine <= 1e-2
    assert fine < coarse
    discrete = verify_left_inverse(sample(integer_range(0, 2), "1", step=1), 0, 0.5)
    assert discrete == pytest.approx(1 - 1 / math.pi, abs=1e-12)
    assert verify_left_inverse(sample(unit_interval, "0", step=1e-2), 0, 0.5) == 0.0


def test_right_inverse(unit_interval):
    fine = verify_right_inverse(sample(unit_interval, "t", step=1e-3), 0, 0.5)
    coarse = verify_right_inverse(sample(unit_interval, "t", step=2e-3), 0, 0.5)
    assert fine <= 5e-3
    assert fine < coarse
    assert verify_right_inverse(sample(unit_interval, "0", step=1e-2), 0, 0.5) == 0.0
    assert verify_right_inverse(sample(unit_interval, "1", step=1e-2), 0, 0.5) > 1e-2


def test_corollary_matches_left_inverse():
    for scale in (interval(0, 1), integer_range(0, 5)):
        h = sample(scale, "t + 1", step=1e-2)
        left = verify_left_inverse(h, 0, 0.5)
        assert verify_corollary(h, 0, 0.5) == (left, left)


def test_identity_orders_validated(unit_interval):
    h = sample(unit_interval, "1", step=0.1)
    with pytest.raises(InvalidOrder):
        verify_semigroup(h, 0, 1.5, 0.5)
    with pytest.raises(InvalidOrder):
        verify_left_inverse(h, 0, -0.5)


# Representabilidade

def test_representable_sqrt(unit_interval):
    report = check_representable(unit_interval, "sqrt(t)", 0, 1, 0.5)
    assert report.c1_ok and report.vanishes_at_a and report.member


def test_representable_singular(unit_interval):
    report = check_representable(unit_interval, "t^(-0.5)", 0, 1, 0.5)
    assert not report.vanishes_at_a
    assert not report.member
    assert report.limit_at_a > 1.0


def test_representable_constant(unit_interval):
    report = check_representable(unit_interval, "1", 0, 1, 0.5)
    assert report.vanishes_at_a
    assert not report.c1_ok
    assert not report.member


# Propriedades

discrete_scales = st.lists(
    st.integers(min_value=0, max_value=400), min_size=2, max_size=40, unique=True
).map(lambda ks: from_points([k / 8 for k in sorted(ks)]))


@hypothesis_settings(max_examples=50, deadline=None)
@given(discrete_scales, st.data())
def test_linearity_and_positivity_discrete(T, data):
    n = len(T.segments)
    grid = build_grid(T, 1.0)
    floats = st.floats(min_value=-10, max_value=10)
    h1 = GridFunction(grid, data.draw(st.lists(floats, min_size=n, max_size=n)))
    h2 = GridFunction(grid, data.draw(st.lists(floats, min_size=n, max_size=n)))
    c1, c2 = data.draw(floats), data.draw(floats)
    alpha = data.draw(st.floats(min_value=0.05, max_value=0.95))
    combined = GridFunction(grid, c1 * h1.values + c2 * h2.values)

    lhs = frac_integral_grid(combined, T.min, alpha).values
    rhs = c1 * frac_integral_grid(h1, T.min, alpha).values + c2 * frac_integral_grid(h2, T.min, alpha).values
    np.testing.assert_allclose(lhs, rhs, atol=1e-10 * (1 + np.max(np.abs(rhs))), rtol=0)

    positive = GridFunction(grid, np.abs(h1.values))
    assert np.all(frac_integral_grid(positive, T.min, alpha).values >= 0)


def test_linearity_on_grid(unit_interval):
    grid = build_grid(unit_interval, 1e-2)
    a = sample(grid, "sin(5*t)")
    b = sample(grid, "exp(t)")
    combined = GridFunction(grid, 2.5 * a.values - 0.75 * b.values)
    lhs = frac_integral_grid(combined, 0, 0.3).values
    rhs = 2.5 * frac_integral_grid(a, 0, 0.3).values - 0.75 * frac_integral_grid(b, 0, 0.3).values
    np.testing.assert_allclose(lhs, rhs, atol=1e-8, rtol=0)


def test_consistency_as_order_tends_to_one():
    T = from_points([0, 0.5, 1.5, 2, 3.25])
    h = sample(T, "t^2 + 1", step=1)
    target = delta_integral(h, 0, 3.25)
    gaps = [abs(frac_integral(h, 0, alpha, 3.25) - target) for alpha in (0.9, 0.99, 0.999)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 2e-2
