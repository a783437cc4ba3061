# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import numpy as np
import pytest

from dgife.components.checker import random_cuts, random_points
from dgife.exception import NonConformingMesh, SingularLocalSystem
from dgife.models.geometry.common import CoefficientField
from dgife.models.ife_space.common import (MINUS_PIECE, PLUS_PIECE, BasisKind, evaluate,
                                           ife_basis, standard_basis)
from dgife.models.ife_space.dofs import continuous_dofs, discontinuous_dofs, interpolate
from dgife.models.ife_space.space import IfeSpace
from dgife.models.mesh.classifier import InterfaceCut, classify
from dgife.models.mesh.common import Element, ElementKind
from dgife.models.mesh.refiner import refine


def _unit_triangle():
    return Element(index=0, kind=ElementKind.TRIANGLE, level=0,
                   vertices=np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]), node_ids=(0, 1, 2))


def _corner_cut():
    d = np.array([0.5, 0.0])
    e = np.array([0.0, 0.5])
    return InterfaceCut(element=0, d=d, e=e,
                        minus_polygon=np.array([d, [0.0, 0.0], e]),
                        plus_polygon=np.array([e, [0.0, 1.0], [1.0, 0.0], d]))


def test_triangle_basis_oracle(beta):
    basis = ife_basis(_unit_triangle(), _corner_cut(), beta)
    assert basis.kind is BasisKind.IMMERSED
    minus = np.array([[1.0, -20.0 / 11.0, -20.0 / 11.0],
                      [0.0, 31.0 / 22.0, 9.0 / 22.0],
                      [0.0, 9.0 / 22.0, 31.0 / 22.0]])
    plus = np.array([[2.0 / 11.0, -2.0 / 11.0, -2.0 / 11.0],
                     [9.0 / 22.0, 13.0 / 22.0, -9.0 / 22.0],
                     [9.0 / 22.0, -9.0 / 22.0, 13.0 / 22.0]])
    np.testing.assert_allclose(basis.coefficients[MINUS_PIECE], minus, atol=1e-13)
    np.testing.assert_allclose(basis.coefficients[PLUS_PIECE], plus, atol=1e-13)
    np.testing.assert_allclose(basis.chord_normal, np.array([1.0, 1.0]) / np.sqrt(2.0))
    assert evaluate(basis, 0, [0.25, 0.25]) == pytest.approx(1.0 / 11.0)


def test_triangle_basis_properties(beta):
    basis = ife_basis(_unit_triangle(), _corner_cut(), beta)
    np.testing.assert_allclose(basis.values(basis.vertices), np.eye(3), atol=1e-13)
    points = np.random.default_rng(3).random((20, 2)) * 0.5
    np.testing.assert_allclose(basis.values(points).sum(axis=-1), 1.0, atol=1e-13)
    for i in range(3):
        assert basis.flux_jump(i, [0.4, 0.1]) == pytest.approx(0.0, abs=1e-12)
        for point in ([0.5, 0.0], [0.0, 0.5], [0.2, 0.3]):
            below = np.asarray(point) - 1e-9
            above = np.asarray(point) + 1e-9
            assert evaluate(basis, i, below) == pytest.approx(evaluate(basis, i, above), abs=1e-7)


def test_equal_coefficients_reduce_to_standard_basis():
    element = _unit_triangle()
    equal = ife_basis(element, _corner_cut(), CoefficientField(3.0, 3.0))
    standard = standard_basis(element, 3.0)
    points = np.random.default_rng(5).random((30, 2)) * 0.5
    np.testing.assert_allclose(equal.values(points), standard.values(points), atol=1e-13)
    np.testing.assert_allclose(equal.gradients(points), standard.gradients(points), atol=1e-12)


def test_standard_rectangle_basis():
    element = Element(index=0, kind=ElementKind.RECTANGLE, level=0,
                      vertices=np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]]),
                      node_ids=(0, 1, 2, 3))
    basis = standard_basis(element)
    np.testing.assert_allclose(basis.values(basis.vertices), np.eye(4), atol=1e-14)
    np.testing.assert_allclose(basis.values([1.0, 0.5]), 0.25, atol=1e-14)
    np.testing.assert_allclose(basis.gradients([0.0, 0.0])[0], [-0.5, -1.0], atol=1e-14)


def test_degenerate_chord_is_singular(beta):
    d = np.array([0.5, 0.0])
    cut = InterfaceCut(element=0, d=d, e=d + np.array([-1e-16, 1e-16]),
                       minus_polygon=np.array([d, [0.0, 0.0], d]),
                       plus_polygon=np.array([d, [1.0, 0.0], [0.0, 1.0]]))
    with pytest.raises(SingularLocalSystem):
        ife_basis(_unit_triangle(), cut, beta)


@pytest.mark.parametrize('kind', list(ElementKind))
def test_random_cuts(kind):
    rng = np.random.default_rng(11)
    cuts = random_cuts(kind, 60, rng)
    assert len(cuts) == 60
    for element, cut, beta in cuts:
        basis = ife_basis(element, cut, beta)
        count = basis.vertex_count
        np.testing.assert_allclose(basis.values(basis.vertices), np.eye(count), atol=1e-9)
        points = random_points(element, 10, rng)
        np.testing.assert_allclose(basis.values(points).sum(axis=-1), 1.0, atol=1e-9)
        middle = 0.5 * (basis.chord[0] + basis.chord[1])
        scale = beta.beta_max * np.max(np.abs(basis.gradients(middle)))
        for i in range(count):
            assert abs(basis.flux_jump(i, middle)) <= 1e-10 * scale
            jump = basis.coefficients[PLUS_PIECE, i] - basis.coefficients[MINUS_PIECE, i]
            for point in basis.chord:
                local = (point - basis.origin) / basis.scale
                monomials = [1.0, local[0], local[1]] + ([local[0] * local[1]] if count == 4 else [])
                assert abs(jump @ np.array(monomials)) < 1e-8


@pytest.mark.parametrize('kind', list(ElementKind))
def test_space_is_nodal(ellipse, beta, kind, rectangles10, triangles10):
    mesh = rectangles10 if kind is ElementKind.RECTANGLE else triangles10
    classification = classify(mesh, ellipse)
    space = IfeSpace(mesh, classification, beta)
    assert len(space.conditions) == classification.interface_count
    assert 1.0 <= space.max_condition < 1e12
    values, _, betas = space.evaluate(np.arange(mesh.element_count)[:, None], mesh.element_vertices)
    np.testing.assert_allclose(values, np.broadcast_to(np.eye(mesh.vertex_count), values.shape),
                               atol=1e-10)
    plain = np.flatnonzero(classification.element_sides != 0)
    np.testing.assert_array_equal(betas[plain, 0], beta(classification.element_sides[plain]))
    element = int(classification.interface_elements[0])
    local = space.local_basis(element)
    assert local.kind is BasisKind.IMMERSED
    centroid = mesh.element_vertices[element].mean(axis=0)
    assert local.values(centroid) == pytest.approx(space.evaluate(element, centroid)[0])


def test_space_combine_reproduces_linear_functions(ellipse, rectangles10):
    classification = classify(rectangles10, ellipse)
    space = IfeSpace(rectangles10, classification, CoefficientField(2.0, 2.0))
    dof_map = discontinuous_dofs(rectangles10)
    nodal = dof_map.expand(interpolate(lambda x, y: 1.0 + 2.0 * x - 3.0 * y, dof_map))
    elements = classification.interface_elements
    points = rectangles10.element_vertices[elements].mean(axis=1)
    values, gradients = space.combine(elements, points, nodal)
    np.testing.assert_allclose(values, 1.0 + 2.0 * points[:, 0] - 3.0 * points[:, 1], atol=1e-12)
    np.testing.assert_allclose(gradients, np.broadcast_to([2.0, -3.0], gradients.shape), atol=1e-10)


def test_dof_maps(rectangles10):
    broken = discontinuous_dofs(rectangles10)
    assert broken.total == 400
    assert not broken.continuous
    shared = continuous_dofs(rectangles10)
    assert shared.total == 121
    assert shared.interior.size == 81
    with pytest.raises(NonConformingMesh):
        continuous_dofs(refine(rectangles10, [0]))
