# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Exact solutions of the interface problem.

The manufactured solution on an ellipse interface is

    u- = a^2 b^2 r^p / beta-
    u+ = a^2 b^2 (r^p / beta+ + 1 / beta- - 1 / beta+)

which is continuous across ``r = 1`` and has a continuous flux
``beta grad(u) = a^2 b^2 grad(r^p)``, so the source term is the same on
both sides.

"""

import abc
import logging
from dataclasses import dataclass

import numpy as np

from ...exception import SingularPoint
from ..geometry.common import CoefficientField, EllipseCurve

_logger = logging.getLogger(__name__)

R_GUARD = 1e-14


class ExactSolution(abc.ABC):
    """ Interface of exact solutions used by the studies """

    @abc.abstractmethod
    def sides(self, x, y):
        """ True side of points, -1 or 1 """

    @abc.abstractmethod
    def value(self, x, y, sides=None):
        """ Exact values, ``sides`` overrides the side of every point """

    @abc.abstractmethod
    def gradient(self, x, y, sides=None):
        """ Exact gradients with a trailing axis of 2 """

    @abc.abstractmethod
    def source(self, x, y, sides=None):
        """ Right hand side of the equation """

    def __call__(self, x, y):
        return self.value(x, y)


@dataclass(frozen=True)
class ManufacturedSolution(ExactSolution):
    curve: EllipseCurve
    beta: CoefficientField
    p: float = 5.0

    @property
    def scale(self):
        return (self.curve.a * self.curve.b) ** 2

    def sides(self, x, y):
        return np.where(self.curve.level_set(x, y) < 0.0, -1, 1)

    def _offsets(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return x - self.curve.center[0], y - self.curve.center[1]

    def _radius(self, x, y):
        return np.maximum(self.curve.radius(x, y), R_GUARD)

    def value(self, x, y, sides=None):
        if sides is None:
            sides = self.sides(x, y)
        beta_minus, beta_plus = self.beta.beta_minus, self.beta.beta_plus
        power = self._radius(x, y) ** self.p
        inside = power / beta_minus
        outside = power / beta_plus + 1.0 / beta_minus - 1.0 / beta_plus
        return self.scale * np.where(np.asarray(sides) < 0, inside, outside)

    def gradient(self, x, y, sides=None):
        if sides is None:
            sides = self.sides(x, y)
        dx, dy = self._offsets(x, y)
        r = self._radius(x, y)
        factor = self.p * r ** (self.p - 2.0)
        beta = self.beta(np.where(np.asarray(sides) < 0, -1, 1))
        coefficient = self.scale * factor / beta
        return np.stack([coefficient * dx / self.curve.a ** 2,
                         coefficient * dy / self.curve.b ** 2], axis=-1)

    def source(self, x, y, sides=None):
        dx, dy = self._offsets(x, y)
        r = self._radius(x, y)
        a, b, p = self.curve.a, self.curve.b, self.p
        laplacian = (p * (p - 2.0) * r ** (p - 4.0) * (dx ** 2 / a ** 4 + dy ** 2 / b ** 4)
                     + p * r ** (p - 2.0) * (1.0 / a ** 2 + 1.0 / b ** 2))
        return -self.scale * laplacian


@dataclass(frozen=True)
class LinearSolution(ExactSolution):
    """ ``c0 + cx x + cy y`` with a continuous coefficient, zero source """
    c0: float = 0.0
    cx: float = 0.0
    cy: float = 0.0
    beta: CoefficientField = CoefficientField(1.0, 1.0)

    def sides(self, x, y):
        return np.ones(np.broadcast(np.asarray(x), np.asarray(y)).shape, dtype=int)

    def value(self, x, y, sides=None):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return self.c0 + self.cx * x + self.cy * y

    def gradient(self, x, y, sides=None):
        shape = np.broadcast(np.asarray(x), np.asarray(y)).shape
        return np.broadcast_to(np.array([self.cx, self.cy], dtype=float), shape + (2,)).copy()

    def source(self, x, y, sides=None):
        return np.zeros(np.broadcast(np.asarray(x), np.asarray(y)).shape)


def source_term(solution, point, side=None):
    """ Source of ``solution`` at one point off the interface

    :raises SingularPoint: at the ellipse center when ``p < 4``
    """
    if isinstance(solution, ManufacturedSolution) and solution.p < 4.0:
        if float(solution.curve.radius(point[0], point[1])) < R_GUARD:
            raise SingularPoint(point)
    sides = None if side is None else np.asarray(int(side))
    return float(solution.source(point[0], point[1], sides))
