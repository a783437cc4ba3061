# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Classification of mesh elements and edges against the interface.

An element is an interface element when its vertices take strictly
opposite level set signs. Its boundary then meets the curve at two points
D and E (sign changes on sides, or vertices lying on the curve) and the
chord DE splits it into the minus and plus sub-polygons. Touching the
curve at a vertex only, or cutting a sliver below ``SLIVER_RATIO`` of the
element area, leaves the element on its majority side. A side whose ends
lie on the same side of the curve and which the curve crosses and crosses
back within ``GRAZE_RATIO`` of its length is treated as not crossed.

"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from ...exception import HypothesisViolation
from ..geometry.common import ROOT_SAMPLES, TOL_GRAD, bisect_segments, scan_segments

_logger = logging.getLogger(__name__)

H1 = 'H1'
H2 = 'H2'
SLIVER_RATIO = 1e-12
DUPLICATE_RATIO = 1e-14
# Curve samples strictly inside a non-interface element, relative to its diameter
INSIDE_RATIO = 1e-6
MIN_CURVE_SAMPLES = 512
MAX_CURVE_SAMPLES = 20000
# Largest excursion of the curve past a side, relative to the side length,
# that is ignored when both ends of the side lie on the same side
GRAZE_RATIO = 0.02
GRAZE_SAMPLES = 64


@dataclass(frozen=True)
class InterfaceCut:
    element: int
    d: np.ndarray
    e: np.ndarray
    minus_polygon: np.ndarray
    plus_polygon: np.ndarray

    @property
    def chord_normal(self):
        """ Unit normal of DE pointing into the plus sub-polygon """
        tangent = self.e - self.d
        normal = np.array([tangent[1], -tangent[0]]) / np.hypot(tangent[0], tangent[1])
        if np.dot(self.plus_polygon.mean(axis=0) - self.d, normal) < 0.0:
            normal = -normal
        return normal

    @property
    def minus_area(self):
        return _polygon_area(self.minus_polygon)

    @property
    def plus_area(self):
        return _polygon_area(self.plus_polygon)


@dataclass
class ElementClassification:
    curve: object
    element_sides: np.ndarray
    cuts: Dict[int, InterfaceCut]
    edge_flags: np.ndarray
    edge_crossings: np.ndarray
    violations: List[tuple] = field(default_factory=list)
    slivers: frozenset = frozenset()
    grazed: frozenset = frozenset()

    @property
    def is_interface(self):
        mask = np.zeros(len(self.element_sides), dtype=bool)
        if self.cuts:
            mask[list(self.cuts)] = True
        return mask

    @property
    def interface_elements(self):
        return np.array(sorted(self.cuts), dtype=np.int64)

    @property
    def interface_count(self):
        return len(self.cuts)

    def cut(self, element):
        return self.cuts.get(int(element))


def _polygon_area(polygon):
    x = polygon[:, 0]
    y = polygon[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))


def _node_sides(mesh, curve):
    phi = curve.level_set(mesh.nodes[:, 0], mesh.nodes[:, 1])
    sides = np.sign(phi).astype(np.int8)
    sides[np.abs(phi) <= curve.tol_on] = 0
    return phi, sides


def _dedupe_ring(ring, tolerance):
    """ Drop ring entries closer than ``tolerance`` to their predecessor """
    kept = []
    for point, side in ring:
        if kept and np.hypot(*(point - kept[-1][0])) <= tolerance:
            if side == 0:
                kept[-1] = (kept[-1][0], 0)
            continue
        kept.append((point, side))
    if len(kept) > 1 and np.hypot(*(kept[0][0] - kept[-1][0])) <= tolerance:
        point, side = kept.pop()
        if side == 0:
            kept[0] = (kept[0][0], 0)
    return kept


def _cut_element(index, vertices, vertex_sides, crossings, diameter):
    """ Sub-polygons of a mixed sign element

    :return: ``(d, e, minus_polygon, plus_polygon)`` or a string giving
             the reason the element can not be cut
    """
    count = len(vertices)
    ring = []
    for v in range(count):
        ring.append((vertices[v], int(vertex_sides[v])))
        if crossings[v] is not None:
            ring.append((crossings[v], 0))
    ring = _dedupe_ring(ring, DUPLICATE_RATIO * diameter)
    zeros = [k for k, (_, side) in enumerate(ring) if side == 0]
    if len(zeros) != 2:
        return '%d boundary points on the interface' % len(zeros)
    first, second = zeros
    arc_a = ring[first:second + 1]
    arc_b = ring[second:] + ring[:first + 1]
    polygons = {}
    for arc in (arc_a, arc_b):
        inner = {side for _, side in arc[1:-1]}
        if len(inner) != 1:
            return 'sub-polygon with mixed vertex signs'
        polygons[inner.pop()] = np.array([point for point, _ in arc])
    if set(polygons) != {-1, 1}:
        return 'both sub-polygons on the same side'
    return ring[first][0], ring[second][0], polygons[-1], polygons[1]


def _graze_depth(curve, start, end, signs, samples=GRAZE_SAMPLES):
    """ Distance the curve reaches past segments whose ends lie on side ``signs`` """
    t = np.linspace(0.0, 1.0, samples)
    points = start[:, None, :] + t[None, :, None] * (end - start)[:, None, :]
    phi = curve.level_set(points[..., 0], points[..., 1])
    slope = np.linalg.norm(curve.gradient(points[..., 0], points[..., 1]), axis=-1)
    excess = -signs[:, None] * phi / np.maximum(slope, TOL_GRAD)
    return np.max(np.maximum(excess, 0.0), axis=1)


def _grazed_sides(curve, start, end, vertex_sides, changes, multiple):
    """ Sides crossed an even number of times by a shallow excursion of the curve """
    s0 = vertex_sides.astype(int)
    s1 = np.roll(s0, -1, axis=1)
    candidates = (multiple & (s0 * s1 > 0) & (changes % 2 == 0)).reshape(-1)
    grazed = np.zeros(candidates.size, dtype=bool)
    if not np.any(candidates):
        return grazed.reshape(multiple.shape)
    index = np.flatnonzero(candidates)
    p0 = start.reshape(-1, 2)[index]
    p1 = end.reshape(-1, 2)[index]
    depth = _graze_depth(curve, p0, p1, s0.reshape(-1)[index].astype(float))
    grazed[index] = depth <= GRAZE_RATIO * np.linalg.norm(p1 - p0, axis=1)
    return grazed.reshape(multiple.shape)


def classify(mesh, curve, samples=ROOT_SAMPLES, strict=True):
    """ Label elements and edges of ``mesh`` against ``curve``

    :param strict: raise on the first side crossed more than once,
                   otherwise the offence is only recorded in ``violations``
    :raises HypothesisViolation: side crossed twice (H1) in strict mode
    """
    _, node_sides = _node_sides(mesh, curve)
    vertex_sides = node_sides[mesh.elements]
    count = mesh.vertex_count
    start = mesh.element_vertices
    end = np.roll(start, -1, axis=1)
    changes, lo, hi = scan_segments(curve, start.reshape(-1, 2), end.reshape(-1, 2), samples)
    changes = changes.reshape(-1, count)
    s0 = vertex_sides
    s1 = np.roll(vertex_sides, -1, axis=1)
    opposite = (s0.astype(int) * s1) < 0
    multiple = (changes > 1) | ((changes == 1) & ~opposite)
    grazed_sides = _grazed_sides(curve, start, end, vertex_sides, changes, multiple)
    multiple &= ~grazed_sides
    grazed = frozenset(int(element) for element in np.flatnonzero(np.any(grazed_sides, axis=1)))
    if grazed:
        _logger.warning('The interface grazes %d element sides, elements %s keep their vertex signs',
                        int(grazed_sides.sum()), sorted(grazed))

    violations = []
    for element in np.flatnonzero(np.any(multiple, axis=1)):
        sides = np.flatnonzero(multiple[element])
        detail = 'side %d crossed more than once' % sides[0]
        if strict:
            raise HypothesisViolation(int(element), H1, detail)
        violations.append((int(element), H1, detail))

    single = (opposite & (changes == 1)).reshape(-1)
    side_points = np.full((single.size, 2), np.nan)
    if np.any(single):
        _, points = bisect_segments(curve, start.reshape(-1, 2)[single], end.reshape(-1, 2)[single],
                                    lo[single], hi[single])
        side_points[single] = points
    side_points = side_points.reshape(-1, count, 2)

    has_minus = np.any(vertex_sides < 0, axis=1)
    has_plus = np.any(vertex_sides > 0, axis=1)
    element_sides = np.where(has_plus, 1, -1).astype(np.int8)
    untouched = ~has_minus & ~has_plus
    if np.any(untouched):
        centers = mesh.element_vertices[untouched].mean(axis=1)
        phi = curve.level_set(centers[:, 0], centers[:, 1])
        element_sides[untouched] = np.where(phi > 0.0, 1, -1)

    cuts = {}
    slivers = set()
    flagged = {element for element, _, _ in violations}
    for element in np.flatnonzero(has_minus & has_plus):
        element = int(element)
        if element in flagged:
            element_sides[element] = 0
            continue
        crossings = [None if np.isnan(side_points[element, v, 0]) else side_points[element, v]
                     for v in range(count)]
        result = _cut_element(element, mesh.element_vertices[element], vertex_sides[element],
                              crossings, mesh.diameters[element])
        if isinstance(result, str):
            violations.append((element, H2, result))
            element_sides[element] = 0
            continue
        d, e, minus_polygon, plus_polygon = result
        minus_area = _polygon_area(minus_polygon)
        plus_area = _polygon_area(plus_polygon)
        if min(minus_area, plus_area) < SLIVER_RATIO * mesh.areas[element]:
            element_sides[element] = -1 if minus_area > plus_area else 1
            slivers.add(element)
            continue
        element_sides[element] = 0
        cuts[element] = InterfaceCut(element=element, d=d, e=e,
                                     minus_polygon=minus_polygon, plus_polygon=plus_polygon)

    edge_flags, edge_crossings = _classify_edges(mesh, curve, samples)
    _logger.debug('Classified %d elements: %d interface, %d slivers, %d interface edges',
                  mesh.element_count, len(cuts), len(slivers), int(edge_flags.sum()))
    return ElementClassification(curve=curve, element_sides=element_sides, cuts=cuts,
                                 edge_flags=edge_flags, edge_crossings=edge_crossings,
                                 violations=violations, slivers=frozenset(slivers),
                                 grazed=grazed)


def _classify_edges(mesh, curve, samples):
    p0 = mesh.edge_points[:, 0]
    p1 = mesh.edge_points[:, 1]
    phi0 = curve.level_set(p0[:, 0], p0[:, 1])
    phi1 = curve.level_set(p1[:, 0], p1[:, 1])
    strict0 = np.where(np.abs(phi0) <= curve.tol_on, 0.0, np.sign(phi0))
    strict1 = np.where(np.abs(phi1) <= curve.tol_on, 0.0, np.sign(phi1))
    changes, lo, hi = scan_segments(curve, p0, p1, samples)
    flags = (strict0 * strict1 < 0) & (changes == 1)
    crossings = np.full((len(p0), 2), np.nan)
    if np.any(flags):
        _, points = bisect_segments(curve, p0[flags], p1[flags], lo[flags], hi[flags])
        crossings[flags] = points
    return flags, crossings


def _distance_to_boundary(points, vertices):
    """ Distance of points to the boundary of their convex elements

    :param points: (n, 2)
    :param vertices: (n, d, 2) counter-clockwise
    """
    a = vertices
    b = np.roll(vertices, -1, axis=1)
    tangent = b - a
    length = np.linalg.norm(tangent, axis=-1)
    rel = points[:, None, :] - a
    cross = tangent[..., 0] * rel[..., 1] - tangent[..., 1] * rel[..., 0]
    return np.min(cross / length, axis=1)


def _curve_samples(curve, mesh):
    shortest = float(mesh.edge_lengths.min())
    count = int(np.clip(8.0 * curve.perimeter() / shortest, MIN_CURVE_SAMPLES, MAX_CURVE_SAMPLES))
    return curve.sample(count)


def validate_hypotheses(mesh, classification):
    """ Check that the mesh resolves the interface

    Every interface element must be cut at two points on distinct sides,
    no side may be crossed twice and no part of the curve may lie inside
    an element left out of the interface set.

    :raises HypothesisViolation: with the offending element and H1 / H2
    """
    if classification.violations:
        element, reason, detail = sorted(classification.violations)[0]
        raise HypothesisViolation(element, reason, detail)
    points = _curve_samples(classification.curve, mesh)
    located = mesh.locate(points)
    inside_domain = located >= 0
    points = points[inside_domain]
    located = located[inside_domain]
    candidates = ~classification.is_interface[located]
    skipped = classification.slivers | classification.grazed
    if skipped:
        candidates &= ~np.isin(located, list(skipped))
    if not np.any(candidates):
        return True
    elements = located[candidates]
    depth = _distance_to_boundary(points[candidates], mesh.element_vertices[elements])
    inside = depth > INSIDE_RATIO * mesh.diameters[elements]
    if np.any(inside):
        element = int(np.min(elements[inside]))
        raise HypothesisViolation(element, H2, 'interface lies inside a non-interface element')
    return True
