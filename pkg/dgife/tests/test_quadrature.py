# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import numpy as np
import pytest

from dgife.exception import DegenerateSubPolygon
from dgife.models.mesh.common import Element, ElementKind
from dgife.numerics.quadrature import (MINUS, PLUS, gauss_cell, gauss_segment, legendre_rule,
                                       split_cell_quadrature, split_edge_quadrature,
                                       triangle_rule)


class _Cut(object):

    def __init__(self, minus_polygon, plus_polygon):
        self.minus_polygon = np.asarray(minus_polygon, dtype=float)
        self.plus_polygon = np.asarray(plus_polygon, dtype=float)


def _element(vertices, kind=ElementKind.RECTANGLE):
    vertices = np.asarray(vertices, dtype=float)
    return Element(index=0, kind=kind, level=0, vertices=vertices,
                   node_ids=tuple(range(len(vertices))))


UNIT_SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


def test_segment_exactness():
    rule = gauss_segment(0.0, 1.0, 2)
    assert rule.integrate(rule.points[:, 0] ** 3) == pytest.approx(0.25, abs=1e-14)


def test_segment_single_point():
    rule = gauss_segment(0.0, 2.0, 1)
    np.testing.assert_allclose(rule.points[:, 0], [1.0])
    np.testing.assert_allclose(rule.weights, [2.0])


def test_segment_cosine():
    rule = gauss_segment(0.0, np.pi, 5)
    assert rule.integrate(np.cos(rule.points[:, 0])) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize('order', range(1, 11))
def test_weights_positive_and_measure(order):
    _, weights = legendre_rule(order)
    assert np.all(weights > 0.0)
    assert weights.sum() == pytest.approx(1.0, abs=1e-14)
    _, weights = triangle_rule(order)
    assert np.all(weights > 0.0)
    assert weights.sum() == pytest.approx(0.5, abs=1e-14)


def test_order_out_of_range():
    with pytest.raises(ValueError):
        legendre_rule(11)


def test_square_moments():
    rule = gauss_cell(_element(UNIT_SQUARE), 3)
    assert rule.measure == pytest.approx(1.0, abs=1e-14)
    x, y = rule.points[:, 0], rule.points[:, 1]
    assert rule.integrate(x ** 2 * y ** 2) == pytest.approx(1.0 / 9.0, abs=1e-14)


def test_triangle_moments():
    element = _element([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], ElementKind.TRIANGLE)
    rule = gauss_cell(element, 3)
    assert rule.measure == pytest.approx(0.5, abs=1e-14)
    assert rule.integrate(rule.points[:, 0] ** 5) == pytest.approx(1.0 / 42.0, abs=1e-14)


def test_split_cell_vertical_chord():
    cut = _Cut([(0.0, 0.0), (0.3, 0.0), (0.3, 1.0), (0.0, 1.0)],
               [(0.3, 0.0), (1.0, 0.0), (1.0, 1.0), (0.3, 1.0)])
    rule = split_cell_quadrature(_element(UNIT_SQUARE), cut, 4)
    assert rule.side_measure(MINUS) == pytest.approx(0.3, abs=1e-14)
    assert rule.side_measure(PLUS) == pytest.approx(0.7, abs=1e-14)
    assert rule.measure == pytest.approx(1.0, abs=1e-14)
    assert np.all(rule.weights > 0.0)
    beta = np.where(rule.sides == MINUS, 1.0, 10.0)
    assert rule.integrate(beta) == pytest.approx(0.3 + 7.0, abs=1e-12)
    minus_x = rule.points[rule.sides == MINUS, 0]
    assert np.all(minus_x <= 0.3)


def test_split_cell_triangle_and_pentagon():
    cut = _Cut([(0.0, 0.0), (0.4, 0.0), (0.0, 0.6)],
               [(0.4, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.6)])
    rule = split_cell_quadrature(_element(UNIT_SQUARE), cut, 3)
    assert rule.side_measure(MINUS) == pytest.approx(0.12, abs=1e-14)
    assert rule.measure == pytest.approx(1.0, abs=1e-14)


def test_split_cell_degenerate():
    cut = _Cut([(0.0, 0.0), (0.5, 0.0), (1.0, 0.0)],
               UNIT_SQUARE)
    with pytest.raises(DegenerateSubPolygon):
        split_cell_quadrature(_element(UNIT_SQUARE), cut, 3)


def test_split_edge(ellipse):
    plain = split_edge_quadrature((0.0, 0.0), (1.0, 0.0), 3)
    assert plain.sides is None
    assert plain.measure == pytest.approx(1.0)
    split = split_edge_quadrature((0.0, 0.0), (1.0, 0.0), 3, crossing=(0.5, 0.0))
    assert split.measure == pytest.approx(1.0, abs=1e-14)
    assert len(split.weights) == 6
    x0, y0 = ellipse.center
    crossing = (x0 + ellipse.a, y0)
    rule = split_edge_quadrature((x0, y0), (x0 + 2 * ellipse.a, y0), 4, crossing=crossing,
                                 curve=ellipse)
    beta = np.where(rule.sides == MINUS, 1.0, 10.0)
    assert rule.integrate(beta) == pytest.approx(11.0 * ellipse.a, rel=1e-12)
