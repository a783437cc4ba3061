# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Gauss rules on segments, triangles and rectangles.

Reference rules live on [0, 1], on the unit square and on the triangle
(0, 0), (1, 0), (0, 1). Weights of mapped rules include the Jacobian so
that ``sum(weights)`` is the measure of the integration region.

Triangles use the collapsed tensor rule: Gauss-Jacobi (weight 1 - u)
in the collapsed direction and Gauss-Legendre in the other one, exact
for total degree ``2 * order - 1``.

Cut elements are integrated by fanning each convex sub-polygon from its
vertex centroid, every point of a split rule carries the side label of
the sub-polygon or sub-segment it belongs to.

"""

import functools
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from ..exception import DegenerateSubPolygon

MIN_ORDER = 1
MAX_ORDER = 10
MINUS = -1
PLUS = 1
# Fan triangles below this fraction of the cell area are degenerate
DEGENERATE_AREA = 1e-14


@dataclass(frozen=True)
class QuadratureRule:
    points: np.ndarray
    weights: np.ndarray
    sides: Optional[np.ndarray] = None

    @property
    def measure(self):
        return float(np.sum(self.weights))

    def integrate(self, values):
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))

    def side_measure(self, side):
        if self.sides is None:
            raise ValueError('Rule has no side labels')
        return float(np.sum(self.weights[self.sides == side]))


def _check_order(order):
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise ValueError('Quadrature order %s outside [%d, %d]' % (order, MIN_ORDER, MAX_ORDER))


@functools.lru_cache(maxsize=None)
def legendre_rule(order):
    """ Gauss-Legendre nodes and weights on [0, 1] """
    _check_order(order)
    nodes, weights = roots_legendre(order)
    return 0.5 * (nodes + 1.0), 0.5 * weights


@functools.lru_cache(maxsize=None)
def square_rule(order):
    """ Tensor Gauss rule on the unit square, ``order ** 2`` points """
    nodes, weights = legendre_rule(order)
    xi, eta = np.meshgrid(nodes, nodes, indexing='ij')
    points = np.column_stack([xi.ravel(), eta.ravel()])
    return points, np.outer(weights, weights).ravel()


@functools.lru_cache(maxsize=None)
def triangle_rule(order):
    """ Collapsed Gauss rule on the reference triangle, weights sum 1/2 """
    _check_order(order)
    nodes, weights = roots_jacobi(order, 1.0, 0.0)
    u = 0.5 * (nodes + 1.0)
    wu = 0.25 * weights
    v, wv = legendre_rule(order)
    uu, vv = np.meshgrid(u, v, indexing='ij')
    points = np.column_stack([uu.ravel(), ((1.0 - uu) * vv).ravel()])
    return points, np.outer(wu, wv).ravel()


def gauss_segment(p0, p1, order):
    """ Gauss rule on the segment from ``p0`` to ``p1``

    :param p0: start point, a scalar for 1D segments or a 2D point
    :param p1: end point
    :param order: number of points, exact for degree ``2 * order - 1``
    """
    p0 = np.atleast_1d(np.asarray(p0, dtype=float))
    p1 = np.atleast_1d(np.asarray(p1, dtype=float))
    t, w = legendre_rule(order)
    length = float(np.linalg.norm(p1 - p0))
    points = p0[None, :] + t[:, None] * (p1 - p0)[None, :]
    return QuadratureRule(points=points, weights=w * length)


def gauss_segments(p0, p1, order):
    """ Batched segment rules, returns points (n, q, 2) and weights (n, q) """
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    t, w = legendre_rule(order)
    delta = p1 - p0
    points = p0[:, None, :] + t[None, :, None] * delta[:, None, :]
    weights = w[None, :] * np.linalg.norm(delta, axis=-1)[:, None]
    return points, weights


def gauss_split_segments(p0, p1, crossings, order):
    """ Batched rules on segments cut at ``crossings``

    The first half of the points of every row lies on ``p0``-crossing,
    the second half on crossing-``p1``.
    """
    first_points, first_weights = gauss_segments(p0, crossings, order)
    second_points, second_weights = gauss_segments(crossings, p1, order)
    points = np.concatenate([first_points, second_points], axis=1)
    weights = np.concatenate([first_weights, second_weights], axis=1)
    return points, weights


def gauss_triangles(vertices, order):
    """ Batched triangle rules, ``vertices`` has shape (n, 3, 2) """
    vertices = np.asarray(vertices, dtype=float)
    ref_points, ref_weights = triangle_rule(order)
    origin = vertices[:, 0, :]
    e1 = vertices[:, 1, :] - origin
    e2 = vertices[:, 2, :] - origin
    points = (origin[:, None, :]
              + ref_points[None, :, 0, None] * e1[:, None, :]
              + ref_points[None, :, 1, None] * e2[:, None, :])
    det = np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])
    return points, ref_weights[None, :] * det[:, None]


def gauss_rectangles(lower, upper, order):
    """ Batched tensor rules on axis aligned rectangles """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    ref_points, ref_weights = square_rule(order)
    size = upper - lower
    points = lower[:, None, :] + ref_points[None, :, :] * size[:, None, :]
    return points, ref_weights[None, :] * (size[:, 0] * size[:, 1])[:, None]


def gauss_cells(vertices, order):
    """ Batched rules on mesh cells, the cell shape follows the vertex count

    Rectangles are given counter-clockwise from the lower left corner.
    """
    vertices = np.asarray(vertices, dtype=float)
    if vertices.shape[1] == 3:
        return gauss_triangles(vertices, order)
    return gauss_rectangles(vertices[:, 0, :], vertices[:, 2, :], order)


def gauss_cell(element, order):
    """ Rule on one mesh element (anything with a ``vertices`` array) """
    points, weights = gauss_cells(np.asarray(element.vertices)[None], order)
    return QuadratureRule(points=points[0], weights=weights[0])


def polygon_area(polygon):
    """ Signed shoelace area of a polygon given as (m, 2) points """
    x = polygon[:, 0]
    y = polygon[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def fan_triangles(polygon):
    """ Triangles (m, 3, 2) fanning a convex polygon from its vertex centroid """
    polygon = np.asarray(polygon, dtype=float)
    if len(polygon) == 3:
        return polygon[None]
    center = polygon.mean(axis=0)
    following = np.roll(polygon, -1, axis=0)
    return np.stack([np.broadcast_to(center, polygon.shape), polygon, following], axis=1)


def _triangle_areas(triangles):
    e1 = triangles[:, 1] - triangles[:, 0]
    e2 = triangles[:, 2] - triangles[:, 0]
    return 0.5 * np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])


def split_cell_quadrature(element, cut, order):
    """ Composite rule on an interface element

    :param element: the cut element, needs ``index``, ``area``
    :param cut: the interface cut with ``minus_polygon`` and ``plus_polygon``
    :param order: order of the rule used on every fan triangle
    :return: a :class:`QuadratureRule` labelled with ``MINUS`` / ``PLUS``
    """
    points = []
    weights = []
    sides = []
    for side, polygon in ((MINUS, cut.minus_polygon), (PLUS, cut.plus_polygon)):
        triangles = fan_triangles(polygon)
        areas = _triangle_areas(triangles)
        smallest = float(areas.min())
        if smallest <= DEGENERATE_AREA * element.area:
            raise DegenerateSubPolygon(element.index, smallest)
        tri_points, tri_weights = gauss_triangles(triangles, order)
        points.append(tri_points.reshape(-1, 2))
        weights.append(tri_weights.ravel())
        sides.append(np.full(tri_weights.size, side, dtype=np.int8))
    return QuadratureRule(points=np.concatenate(points),
                          weights=np.concatenate(weights),
                          sides=np.concatenate(sides))


def split_edge_quadrature(p0, p1, order, crossing=None, curve=None):
    """ Rule on an edge, split at the interface crossing when there is one

    Without a crossing this is :func:`gauss_segment`. With a curve, each
    sub-segment is labelled by the sign of the level set at its midpoint.
    """
    if crossing is None:
        rule = gauss_segment(p0, p1, order)
        if curve is None:
            return rule
        middle = 0.5 * (np.asarray(p0, dtype=float) + np.asarray(p1, dtype=float))
        side = MINUS if curve.level_set(middle[0], middle[1]) < 0.0 else PLUS
        return QuadratureRule(rule.points, rule.weights,
                              np.full(len(rule.weights), side, dtype=np.int8))
    first = gauss_segment(p0, crossing, order)
    second = gauss_segment(crossing, p1, order)
    sides = None
    if curve is not None:
        labels = []
        for rule, start, end in ((first, p0, crossing), (second, crossing, p1)):
            middle = 0.5 * (np.asarray(start, dtype=float) + np.asarray(end, dtype=float))
            side = MINUS if curve.level_set(middle[0], middle[1]) < 0.0 else PLUS
            labels.append(np.full(len(rule.weights), side, dtype=np.int8))
        sides = np.concatenate(labels)
    return QuadratureRule(points=np.concatenate([first.points, second.points]),
                          weights=np.concatenate([first.weights, second.weights]),
                          sides=sides)
