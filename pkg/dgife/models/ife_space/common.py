# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Local nodal bases, standard and immersed.

Polynomials are written in the scaled coordinates of the element
bounding box, ``xi = (x - x0) / hx`` and ``eta = (y - y0) / hy``, with the
monomials ``1, xi, eta`` on triangles and ``1, xi, eta, xi * eta`` on
rectangles.

An immersed basis function has one polynomial per side of the chord DE.
Its coefficients solve, for each vertex, the system made of the nodal
conditions, continuity at D and E, the flux jump condition across the
chord and, on rectangles, equal ``xi * eta`` coefficients. The flux
condition of bilinear pieces is imposed on the chord mean, which is the
value at the chord midpoint since the flux is linear along the chord.

"""

import enum
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...exception import SingularLocalSystem

_logger = logging.getLogger(__name__)

MINUS_PIECE = 0
PLUS_PIECE = 1
COND_LIMIT = 1e12


class BasisKind(str, enum.Enum):
    STANDARD = 'standard'
    IMMERSED = 'immersed'


def monomials(xi, eta, count):
    """ Monomial values with a trailing axis of ``count`` (3 or 4) """
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    columns = [np.ones_like(xi), xi, eta]
    if count == 4:
        columns.append(xi * eta)
    return np.stack(columns, axis=-1)


def monomial_gradients(xi, eta, count):
    """ Gradients in scaled coordinates, shape (..., count, 2) """
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    zero = np.zeros_like(xi)
    one = np.ones_like(xi)
    d_xi = [zero, one, zero]
    d_eta = [zero, zero, one]
    if count == 4:
        d_xi.append(eta)
        d_eta.append(xi)
    return np.stack([np.stack(d_xi, axis=-1), np.stack(d_eta, axis=-1)], axis=-1)


@dataclass(frozen=True)
class LocalBasis:
    element: int
    kind: BasisKind
    vertices: np.ndarray
    origin: np.ndarray
    scale: np.ndarray
    coefficients: np.ndarray
    betas: np.ndarray
    chord: Optional[np.ndarray] = None
    chord_normal: Optional[np.ndarray] = None
    condition: float = 1.0

    @property
    def vertex_count(self):
        return len(self.vertices)

    def _local(self, points):
        points = np.asarray(points, dtype=float)
        local = (points - self.origin) / self.scale
        return local[..., 0], local[..., 1]

    def pieces(self, points):
        """ Piece index of every point, points on the chord use the minus piece """
        points = np.asarray(points, dtype=float)
        if self.kind is BasisKind.STANDARD:
            return np.zeros(points.shape[:-1], dtype=np.intp)
        distance = (points - self.chord[0]) @ self.chord_normal
        return (distance > 0.0).astype(np.intp)

    def values(self, points):
        """ All basis functions at ``points``, shape (..., d) """
        xi, eta = self._local(points)
        coef = self.coefficients[self.pieces(points)]
        return np.einsum('...im,...m->...i', coef, monomials(xi, eta, self.vertex_count))

    def gradients(self, points):
        """ All basis gradients at ``points``, shape (..., d, 2) """
        xi, eta = self._local(points)
        coef = self.coefficients[self.pieces(points)]
        grads = monomial_gradients(xi, eta, self.vertex_count) / self.scale
        return np.einsum('...im,...mk->...ik', coef, grads)

    def flux_jump(self, i, point):
        """ beta+ grad(phi+).n - beta- grad(phi-).n at a point of the chord """
        if self.kind is BasisKind.STANDARD:
            return 0.0
        xi, eta = self._local(point)
        grads = monomial_gradients(xi, eta, self.vertex_count) / self.scale
        minus = self.coefficients[MINUS_PIECE, i] @ grads @ self.chord_normal
        plus = self.coefficients[PLUS_PIECE, i] @ grads @ self.chord_normal
        return float(self.betas[PLUS_PIECE] * plus - self.betas[MINUS_PIECE] * minus)


def evaluate(basis, i, point):
    """ Value of basis function ``i`` at ``point`` """
    return float(basis.values(np.asarray(point, dtype=float))[i])


def evaluate_gradient(basis, i, point):
    """ Gradient of basis function ``i`` at ``point`` """
    return basis.gradients(np.asarray(point, dtype=float))[i]


def _scaling(vertices):
    origin = vertices.min(axis=0)
    return origin, vertices.max(axis=0) - origin


def standard_coefficients(vertices):
    """ Batched nodal coefficients (E, d, m) for vertices (E, d, 2) """
    vertices = np.asarray(vertices, dtype=float)
    origin = vertices.min(axis=1)
    scale = vertices.max(axis=1) - origin
    local = (vertices - origin[:, None, :]) / scale[:, None, :]
    count = vertices.shape[1]
    vandermonde = monomials(local[..., 0], local[..., 1], count)
    identity = np.broadcast_to(np.eye(count), vandermonde.shape)
    return np.swapaxes(np.linalg.solve(vandermonde, identity), 1, 2)


def standard_basis(element, beta=1.0):
    """ Linear (triangle) or bilinear (rectangle) nodal basis of ``element`` """
    vertices = np.asarray(element.vertices, dtype=float)
    origin, scale = _scaling(vertices)
    coefficients = standard_coefficients(vertices[None])[0]
    return LocalBasis(element=element.index, kind=BasisKind.STANDARD, vertices=vertices,
                      origin=origin, scale=scale,
                      coefficients=np.stack([coefficients, coefficients]),
                      betas=np.array([beta, beta], dtype=float))


def ife_basis(element, cut, beta, cond_limit=COND_LIMIT):
    """ Immersed nodal basis of an interface element

    :param element: the element, needs ``index`` and ``vertices``
    :param cut: the :class:`InterfaceCut` with D, E and the sub-polygons
    :param beta: the :class:`CoefficientField`
    :raises SingularLocalSystem: when the local system is ill-conditioned
    """
    vertices = np.asarray(element.vertices, dtype=float)
    origin, scale = _scaling(vertices)
    count = len(vertices)
    size = 2 * count
    normal = cut.chord_normal
    d_point = np.asarray(cut.d, dtype=float)
    e_point = np.asarray(cut.e, dtype=float)

    def local(point):
        scaled = (np.asarray(point, dtype=float) - origin) / scale
        return scaled[..., 0], scaled[..., 1]

    matrix = np.zeros((size, size))
    rhs = np.zeros((size, count))
    vertex_pieces = ((vertices - d_point) @ normal > 0.0).astype(int)
    values = monomials(*local(vertices), count)
    for j in range(count):
        piece = vertex_pieces[j]
        matrix[j, piece * count:(piece + 1) * count] = values[j]
        rhs[j, j] = 1.0
    row = count
    for point in (d_point, e_point):
        value = monomials(*local(point), count)
        matrix[row, :count] = value
        matrix[row, count:] = -value
        row += 1
    middle = 0.5 * (d_point + e_point)
    flux = (monomial_gradients(*local(middle), count) / scale) @ normal
    matrix[row, :count] = beta.beta_minus * flux
    matrix[row, count:] = -beta.beta_plus * flux
    row += 1
    if count == 4:
        matrix[row, 3] = 1.0
        matrix[row, count + 3] = -1.0

    condition = float(np.linalg.cond(matrix))
    if not np.isfinite(condition) or condition > cond_limit:
        raise SingularLocalSystem(element.index, condition)
    solution = np.linalg.solve(matrix, rhs)
    coefficients = np.stack([solution[:count].T, solution[count:].T])
    return LocalBasis(element=element.index, kind=BasisKind.IMMERSED, vertices=vertices,
                      origin=origin, scale=scale, coefficients=coefficients,
                      betas=np.array([beta.beta_minus, beta.beta_plus], dtype=float),
                      chord=np.stack([d_point, e_point]), chord_normal=normal,
                      condition=condition)
