# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import math

import pytest

from dgife.models.geometry.common import CoefficientField, EllipseCurve
from dgife.models.mesh.common import ElementKind, build_uniform
from dgife.models.problem.common import ManufacturedSolution

SEMI_AXIS = math.pi / 6.28


@pytest.fixture
def ellipse():
    return EllipseCurve(center=(-0.2, 0.1), a=SEMI_AXIS, b=1.5 * SEMI_AXIS)


@pytest.fixture
def beta():
    return CoefficientField(1.0, 10.0)


@pytest.fixture
def solution(ellipse, beta):
    return ManufacturedSolution(curve=ellipse, beta=beta, p=5.0)


@pytest.fixture
def rectangles10():
    return build_uniform(10, ElementKind.RECTANGLE)


@pytest.fixture
def triangles10():
    return build_uniform(10, ElementKind.TRIANGLE)
