# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import dataclasses
from types import SimpleNamespace

import numpy as np
import pytest

from dgife.models.adaptivity.common import (DORFLER, INTERFACE, adapt_loop, mark_dorfler,
                                            mark_interface)
from dgife.models.config.common import RunConfig
from dgife.models.error_analysis.common import ErrorRow
from dgife.models.mesh.classifier import classify
from dgife.models.mesh.common import ElementKind, build_uniform


def _brute_force_bulk(indicators, theta):
    squared = indicators ** 2
    order = sorted(range(len(squared)), key=lambda k: (-squared[k], k))
    total = squared.sum()
    covered = 0.0
    for count, element in enumerate(order, start=1):
        covered += squared[element]
        if covered >= theta * total:
            return sorted(order[:count])
    return sorted(order)


def _config(**study):
    config = RunConfig()
    return dataclasses.replace(config, study=dataclasses.replace(config.study, **study))


def _result(mesh, indicators, classification=None):
    row = ErrorRow(n=None, dof=mesh.element_count * mesh.vertex_count, errors={},
                   indicators=np.asarray(indicators, dtype=float))
    return SimpleNamespace(row=row, classification=classification)


def test_dorfler_matches_brute_force():
    rng = np.random.default_rng(7)
    for _ in range(100):
        indicators = rng.random(int(rng.integers(1, 60))) ** 3
        theta = float(rng.uniform(0.05, 0.95))
        assert mark_dorfler(indicators, theta).tolist() == _brute_force_bulk(indicators, theta)


def test_dorfler_equal_shares():
    marked = mark_dorfler(np.ones(100), 0.2)
    assert marked.tolist() == list(range(20))


def test_dorfler_is_minimal():
    rng = np.random.default_rng(8)
    indicators = rng.random(200)
    squared = indicators ** 2
    marked = mark_dorfler(indicators, 0.5)
    assert squared[marked].sum() >= 0.5 * squared.sum()
    assert squared[marked].sum() - squared[marked].min() < 0.5 * squared.sum()
    rest = np.setdiff1d(np.arange(200), marked)
    assert squared[rest].max() <= squared[marked].min()


@pytest.mark.parametrize('value', [0.1, 0.3, 1.0 / 3.0, 0.7])
def test_dorfler_prefix_reaches_the_bulk(value):
    for count in (7, 10, 30, 100):
        indicators = np.full(count, value)
        for theta in (0.1, 0.2, 0.3, 0.5, 0.9):
            marked = mark_dorfler(indicators, theta)
            squared = indicators ** 2
            assert np.cumsum(squared[marked])[-1] >= theta * np.sum(squared)
            assert marked.size >= 1


def test_dorfler_degenerate_input():
    assert mark_dorfler(np.zeros(10), 0.3).size == 0
    assert mark_dorfler(np.zeros(0), 0.3).size == 0
    for theta in (0.0, 1.0, -0.1):
        with pytest.raises(ValueError):
            mark_dorfler(np.ones(3), theta)


def test_interface_marking(ellipse, rectangles10):
    classification = classify(rectangles10, ellipse)
    np.testing.assert_array_equal(mark_interface(classification), classification.interface_elements)


def test_interface_loop_element_counts(ellipse, rectangles10):
    def solve(mesh, iteration):
        return _result(mesh, np.ones(mesh.element_count), classify(mesh, ellipse))

    state = adapt_loop(_config(), INTERFACE, 2, solve, mesh=rectangles10)
    assert state.element_counts == [100, 178, 334]
    assert state.iterations == 3
    assert len(state.marked) == 2
    assert len(state.report) == 3


def test_loop_stops_without_marked_elements():
    calls = []

    def solve(mesh, iteration):
        calls.append(iteration)
        return _result(mesh, np.zeros(mesh.element_count))

    state = adapt_loop(_config(initial_n=4), DORFLER, 5, solve)
    assert calls == [0]
    assert state.iterations == 1
    assert state.mesh.element_count == 32
    assert state.marked[0].size == 0


def test_loop_refines_the_peak():
    def solve(mesh, iteration):
        indicators = np.full(mesh.element_count, 1e-3)
        indicators[0] = 1.0
        return _result(mesh, indicators)

    mesh = build_uniform(4, ElementKind.RECTANGLE)
    state = adapt_loop(_config(theta=0.5), DORFLER, 2, solve, mesh=mesh)
    assert state.element_counts == [16, 19, 22]
    assert state.mesh.max_level == 2
    capped = adapt_loop(_config(theta=0.5, max_level=1), DORFLER, 4, solve, mesh=mesh)
    assert capped.element_counts == [16, 19]


def test_unknown_strategy():
    with pytest.raises(ValueError):
        adapt_loop(_config(), 'random', 1, lambda mesh, iteration: None)


def test_loop_stops_at_the_dof_cap():
    def solve(mesh, iteration):
        return _result(mesh, np.ones(mesh.element_count))

    mesh = build_uniform(4, ElementKind.RECTANGLE)
    state = adapt_loop(_config(theta=0.5, max_dof=100), DORFLER, 10, solve, mesh=mesh)
    dofs = state.report.dofs
    assert dofs[0] == 64
    assert dofs[-1] >= 100
    assert all(dof < 100 for dof in dofs[:-1])
    assert len(state.marked) == state.iterations - 1
