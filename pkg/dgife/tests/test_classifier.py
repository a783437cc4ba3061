# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import numpy as np
import pytest

from dgife.exception import HypothesisViolation
from dgife.models.geometry.common import EllipseCurve
from dgife.models.mesh.classifier import H1, H2, classify, validate_hypotheses
from dgife.models.mesh.common import ElementKind, build_uniform
from dgife.models.mesh.refiner import refine


def _mixed_sign_elements(mesh, curve):
    phi = curve.level_set(mesh.nodes[:, 0], mesh.nodes[:, 1])[mesh.elements]
    return np.flatnonzero(np.any(phi < 0.0, axis=1) & np.any(phi > 0.0, axis=1))


@pytest.mark.parametrize('kind', list(ElementKind))
def test_interface_elements_have_mixed_signs(ellipse, kind):
    mesh = build_uniform(10, kind)
    classification = classify(mesh, ellipse)
    np.testing.assert_array_equal(classification.interface_elements, _mixed_sign_elements(mesh, ellipse))
    assert np.all(classification.element_sides[classification.interface_elements] == 0)
    assert validate_hypotheses(mesh, classification)


def test_interface_count_drives_refinement(ellipse, rectangles10):
    classification = classify(rectangles10, ellipse)
    assert classification.interface_count == 26
    refined = refine(rectangles10, classification.interface_elements)
    assert refined.element_count == 178
    assert validate_hypotheses(refined, classify(refined, ellipse))


def test_cut_geometry(ellipse, rectangles10):
    classification = classify(rectangles10, ellipse)
    for element, cut in classification.cuts.items():
        total = cut.minus_area + cut.plus_area
        assert total == pytest.approx(rectangles10.areas[element], rel=1e-12)
        for point in (cut.d, cut.e):
            assert abs(ellipse.level_set(point[0], point[1])) < 1e-10
        assert np.all(ellipse.level_set(cut.minus_polygon[1:-1, 0], cut.minus_polygon[1:-1, 1]) < 0.0)
        assert np.all(ellipse.level_set(cut.plus_polygon[1:-1, 0], cut.plus_polygon[1:-1, 1]) > 0.0)
        assert np.linalg.norm(cut.chord_normal) == pytest.approx(1.0)


def test_interface_edges(ellipse, triangles10):
    classification = classify(triangles10, ellipse)
    flagged = np.flatnonzero(classification.edge_flags)
    assert flagged.size > 0
    crossings = classification.edge_crossings[flagged]
    assert np.all(np.abs(ellipse.level_set(crossings[:, 0], crossings[:, 1])) < 1e-10)
    assert np.all(np.isnan(classification.edge_crossings[~classification.edge_flags]))


def test_curve_away_from_mesh(rectangles10):
    outside = classify(rectangles10, EllipseCurve(center=(10.0, 10.0), a=0.5, b=0.5))
    assert outside.interface_count == 0
    assert np.all(outside.element_sides == 1)
    around = classify(rectangles10, EllipseCurve(center=(0.0, 0.0), a=10.0, b=10.0))
    assert around.interface_count == 0
    assert np.all(around.element_sides == -1)


def test_single_cell_does_not_resolve(ellipse):
    mesh = build_uniform(1, ElementKind.RECTANGLE)
    classification = classify(mesh, ellipse)
    assert classification.interface_count == 0
    with pytest.raises(HypothesisViolation) as error:
        validate_hypotheses(mesh, classification)
    assert error.value.reason == H2


def test_curve_inside_one_element():
    mesh = build_uniform(2, ElementKind.RECTANGLE)
    curve = EllipseCurve(center=(0.5, 0.5), a=0.01, b=0.01)
    classification = classify(mesh, curve)
    assert classification.interface_count == 0
    with pytest.raises(HypothesisViolation) as error:
        validate_hypotheses(mesh, classification)
    assert error.value.reason == H2
    assert error.value.element == int(mesh.locate([[0.5, 0.5]])[0])


def test_vertex_contact_is_not_interface():
    mesh = build_uniform(2, ElementKind.RECTANGLE)
    classification = classify(mesh, EllipseCurve(center=(0.5, 0.0), a=0.5, b=0.5))
    element = int(mesh.locate([[-0.5, -0.5]])[0])
    assert classification.cut(element) is None
    assert classification.element_sides[element] == 1


def test_side_crossed_twice():
    mesh = build_uniform(1, ElementKind.RECTANGLE)
    curve = EllipseCurve(center=(0.0, -1.0), a=0.5, b=0.5)
    with pytest.raises(HypothesisViolation) as error:
        classify(mesh, curve)
    assert error.value.reason == H1
    classification = classify(mesh, curve, strict=False)
    assert classification.violations[0][:2] == (0, H1)
    with pytest.raises(HypothesisViolation):
        validate_hypotheses(mesh, classification)


def test_shallow_graze_keeps_vertex_signs():
    mesh = build_uniform(1, ElementKind.RECTANGLE)
    curve = EllipseCurve(center=(0.0, -1.49), a=0.5, b=0.5)
    classification = classify(mesh, curve)
    assert classification.grazed == frozenset([0])
    assert classification.interface_count == 0
    assert classification.element_sides[0] == 1
    assert validate_hypotheses(mesh, classification)


def test_ellipse_grazes_a_triangle_diagonal(ellipse, triangles10):
    classification = classify(triangles10, ellipse)
    lower, upper = triangles10.locate([[0.15, -0.55], [0.05, -0.45]])
    assert int(lower) in classification.grazed
    assert classification.cut(lower) is None
    assert classification.element_sides[lower] == 1
    assert classification.cut(upper) is not None
    assert not classification.violations
    assert validate_hypotheses(triangles10, classification)
