#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Testes de cálculo delta
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from services.calculus import (
    GridFunction,
    build_grid,
    compare_delta_riemann,
    delta_derivative,
    delta_derivative_grid,
    delta_integral,
    delta_integral_grid,
    sample,
)
from services.errors import BadRange, DomainError, InvalidGridFunction, NotIncreasing, NotInScale, OutsideKappa
from services.timescale import Interval, Point, canonicalize, from_points, integer_range, interval


@pytest.fixture
def gap_scale():
    """[0,1] ∪ {2}"""
    return canonicalize([Interval(0, 1), Point(2)])


def test_sample_examples(gap_scale):
    g = sample(from_points([0, 1, 2]), "t^2", step=0.1)
    assert list(g.values) == [0.0, 1.0, 4.0]
    g = sample(interval(0, 1), "1", step=0.5)
    assert list(g.nodes) == [0.0, 0.5, 1.0]
    assert list(g.values) == [1.0, 1.0, 1.0]
    g = sample(gap_scale, "t", step=1)
    assert list(g.nodes) == [0.0, 1.0, 2.0]
    assert list(g.values) == [0.0, 1.0, 2.0]


def test_grid_invariants():
    T = canonicalize([Interval(0, 1), Point(1.5), Interval(2, 2.35)])
    grid = build_grid(T, 0.1)
    assert np.all(np.diff(grid.nodes) > 0)
    for t in (0.0, 1.0, 1.5, 2.0, 2.35):
        assert t in set(grid.nodes)
    assert all(t in T for t in grid.nodes)
    inside = grid.mu == 0
    assert np.all(np.diff(grid.nodes)[inside[:-1]] <= 0.1 + 1e-12)
    assert grid.mu[grid.index_of(1.0)] == 0.5
    assert grid.mu[grid.index_of(1.5)] == 0.5
    assert grid.mu[-1] == 0.0


def test_sample_off_singular():
    g = sample(interval(0, 1), "t^(-0.5)", step=0.25, off_singular=True)
    assert g.values[0] == pytest.approx(0.125 ** -0.5)
    with pytest.raises(DomainError):
        sample(interval(0, 1), "t^(-0.5)", step=0.25)


def test_grid_function_validation():
    grid = build_grid(from_points([0, 1]), 1)
    with pytest.raises(InvalidGridFunction):
        GridFunction(grid, [1.0])
    with pytest.raises(InvalidGridFunction):
        GridFunction(grid, [1.0, float("inf")])


def test_delta_derivative_examples(gap_scale):
    assert delta_derivative(sample(integer_range(0, 4), "t^2", step=1), 3) == 7.0
    fine = sample(interval(0, 1), "t^2", step=1e-3)
    assert delta_derivative(fine, 0.5) == pytest.approx(1.0, abs=1e-6)
    assert delta_derivative(sample(gap_scale, "t", step=0.1), 1) == 1.0


def test_delta_derivative_edges_and_kappa(gap_scale):
    g = sample(interval(0, 1), "t^2", step=1e-2)
    assert delta_derivative(g, 0) == pytest.approx(0.0, abs=1e-10)
    assert delta_derivative(g, 1) == pytest.approx(2.0, abs=1e-10)
    with pytest.raises(OutsideKappa):
        delta_derivative(sample(gap_scale, "t", step=0.1), 2)
    with pytest.raises(OutsideKappa):
        delta_derivative(sample(integer_range(0, 4), "t", step=1), 4)
    derived = delta_derivative_grid(sample(integer_range(0, 4), "t^2", step=1))
    assert list(derived.nodes) == [0.0, 1.0, 2.0, 3.0]
    assert list(derived.values) == [1.0, 3.0, 5.0, 7.0]


def test_delta_integral_examples(gap_scale):
    assert delta_integral(sample(integer_range(0, 3), "1", step=1), 0, 3) == 3.0
    assert delta_integral(sample(interval(0, 1), "t", step=1e-3), 0, 1) == pytest.approx(0.5, abs=1e-6)
    assert delta_integral(sample(gap_scale, "1", step=0.1), 0, 2) == pytest.approx(2.0, abs=1e-12)


def test_delta_integral_errors(gap_scale):
    g = sample(gap_scale, "1", step=0.1)
    with pytest.raises(BadRange):
        delta_integral(g, 2, 0)
    with pytest.raises(NotInScale):
        delta_integral(g, 0, 1.5)
    assert delta_integral(g, 1, 1) == 0.0


def test_additivity_and_cumulative(gap_scale):
    g = sample(gap_scale, "exp(t)", step=0.01)
    whole = delta_integral(g, 0, 2)
    assert whole == pytest.approx(delta_integral(g, 0, 0.5) + delta_integral(g, 0.5, 2), abs=1e-12)
    cumulative = delta_integral_grid(g, 0)
    assert cumulative.values[-1] == pytest.approx(whole, abs=1e-12)
    assert cumulative.values[0] == 0.0


def test_trapezoid_order_two():
    errors = []
    for step in (0.1, 0.05, 0.025):
        errors.append(abs(delta_integral(sample(interval(0, 1), "exp(t)", step=step), 0, 1) - (np.e - 1)))
    assert errors[0] / errors[1] == pytest.approx(4.0, rel=0.05)
    assert errors[1] / errors[2] == pytest.approx(4.0, rel=0.05)


def test_compare_delta_riemann_examples():
    result = compare_delta_riemann(sample(from_points([0, 1, 2]), "t", step=1), 0, 2)
    assert result.delta_value == 1.0 and result.extension_value == 1.0 and result.holds
    result = compare_delta_riemann(sample(interval(0, 2), "t", step=1e-3), 0, 2)
    assert result.delta_value == pytest.approx(2.0, abs=1e-9)
    assert abs(result.delta_value - result.extension_value) <= 1e-9
    result = compare_delta_riemann(sample(from_points([0, 2]), "t^2", step=1), 0, 2)
    assert result.delta_value == 0.0 and result.extension_value == 0.0 and result.holds
    with pytest.raises(NotIncreasing):
        compare_delta_riemann(sample(interval(0, 1), "-t", step=0.1), 0, 1)


MIXED_SCALES = [
    canonicalize([Interval(0, 1), Point(2)]),
    canonicalize([Point(0), Point(0.5), Interval(1, 2)]),
    canonicalize([Interval(0, 0.5), Point(1), Interval(1.5, 2)]),
    from_points([0, 0.25, 1, 1.5, 2]),
    canonicalize([Point(0), Interval(0.5, 1), Point(1.25), Point(2)]),
]
INCREASING = ["t", "t^2", "t^3", "exp(t)", "sqrt(t)", "t + 1", "2*t - 3", "log(t + 1)", "t^2 + t", "exp(t/2) - 1"]


@pytest.mark.parametrize("scale", MIXED_SCALES)
@pytest.mark.parametrize("fn", INCREASING)
def test_prop1_inequality(scale, fn):
    result = compare_delta_riemann(sample(scale, fn, step=0.01), scale.min, scale.max)
    assert result.holds


@given(
    st.lists(st.integers(min_value=-1000, max_value=1000), min_size=2, max_size=30, unique=True),
    st.data(),
)
def test_discrete_fundamental_theorem(raw, data):
    T = from_points([k / 10 for k in sorted(raw)])
    values = data.draw(st.lists(st.floats(-100, 100), min_size=len(T.segments), max_size=len(T.segments)))
    g = GridFunction(build_grid(T, 1.0), values)
    derivative = delta_derivative_grid(g)
    mu = g.grid.mu[:-1]
    total = float(np.sum(mu * derivative.values))
    assert total == pytest.approx(g.values[-1] - g.values[0], abs=1e-9 * (1 + np.max(np.abs(values))))
