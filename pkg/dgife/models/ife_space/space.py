# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import logging

import numpy as np

from ...numerics.quadrature import (gauss_cells, gauss_segments, gauss_split_segments,
                                    split_cell_quadrature)
from ...numerics.utils import DEFAULT_CHUNK_SIZE, chunks
from .common import (COND_LIMIT, BasisKind, LocalBasis, ife_basis, monomial_gradients,
                     monomials, standard_coefficients)

_logger = logging.getLogger(__name__)


class IfeSpace(object):
    """ Broken IFE space of a classified mesh

    Coefficients of every element are stacked in ``coefficients`` with
    shape (E, 2, d, m), the second axis being the minus / plus piece.
    Non-interface elements carry the same polynomial twice and a zero
    chord normal, so that every point selects the minus piece.
    """

    def __init__(self, mesh, classification, beta, cond_limit=COND_LIMIT):
        self.mesh = mesh
        self.classification = classification
        self.beta = beta
        count = mesh.vertex_count
        self.vertex_count = count
        self.origins = mesh.origins
        self.scales = mesh.sizes
        standard = standard_coefficients(mesh.element_vertices)
        self.coefficients = np.stack([standard, standard], axis=1)
        element_beta = beta(classification.element_sides)
        self.piece_betas = np.column_stack([element_beta, element_beta]).astype(float)
        self.chord_points = np.zeros((mesh.element_count, 2))
        self.chord_normals = np.zeros((mesh.element_count, 2))
        self.conditions = {}
        for element, cut in sorted(classification.cuts.items()):
            basis = ife_basis(mesh.element(element), cut, beta, cond_limit=cond_limit)
            self.coefficients[element] = basis.coefficients
            self.piece_betas[element] = basis.betas
            self.chord_points[element] = basis.chord[0]
            self.chord_normals[element] = basis.chord_normal
            self.conditions[element] = basis.condition
        if self.conditions:
            _logger.debug('IFE local systems: %d, max condition %.3e',
                          len(self.conditions), max(self.conditions.values()))

    @property
    def max_condition(self):
        return max(self.conditions.values()) if self.conditions else 1.0

    def local_basis(self, element):
        element = int(element)
        immersed = element in self.conditions
        vertices = self.mesh.element_vertices[element]
        return LocalBasis(element=element,
                          kind=BasisKind.IMMERSED if immersed else BasisKind.STANDARD,
                          vertices=vertices.copy(),
                          origin=self.origins[element].copy(),
                          scale=self.scales[element].copy(),
                          coefficients=self.coefficients[element].copy(),
                          betas=self.piece_betas[element].copy(),
                          chord=self._chord(element) if immersed else None,
                          chord_normal=self.chord_normals[element].copy() if immersed else None,
                          condition=self.conditions.get(element, 1.0))

    def _chord(self, element):
        cut = self.classification.cuts[element]
        return np.stack([np.asarray(cut.d, dtype=float), np.asarray(cut.e, dtype=float)])

    def pieces(self, elements, points):
        points = np.asarray(points, dtype=float)
        elements = np.broadcast_to(np.asarray(elements), points.shape[:-1])
        offset = points - self.chord_points[elements]
        distance = np.einsum('...k,...k->...', offset, self.chord_normals[elements])
        return elements, (distance > 0.0).astype(np.intp)

    def evaluate(self, elements, points):
        """ Basis values, gradients and coefficients at points of given elements

        :param elements: element ids broadcastable to ``points.shape[:-1]``
        :param points: physical points (..., 2)
        :return: ``(values (..., d), gradients (..., d, 2), betas (...))``
        """
        points = np.asarray(points, dtype=float)
        elements, piece = self.pieces(elements, points)
        scale = self.scales[elements]
        local = (points - self.origins[elements]) / scale
        coef = self.coefficients[elements, piece]
        count = self.vertex_count
        values = np.einsum('...im,...m->...i', coef, monomials(local[..., 0], local[..., 1], count))
        grads = monomial_gradients(local[..., 0], local[..., 1], count) / scale[..., None, :]
        gradients = np.einsum('...im,...mk->...ik', coef, grads)
        return values, gradients, self.piece_betas[elements, piece]

    def combine(self, elements, points, nodal):
        """ Value and gradient of the discrete function with element-wise nodal values

        :param nodal: (E, d) nodal values
        """
        values, gradients, _ = self.evaluate(elements, points)
        elements = np.broadcast_to(np.asarray(elements), np.asarray(points).shape[:-1])
        local = nodal[elements]
        return (np.einsum('...i,...i->...', values, local),
                np.einsum('...ik,...i->...k', gradients, local))

    def volume_batches(self, order, chunk_size=DEFAULT_CHUNK_SIZE):
        """ Quadrature batches covering every element

        Yields ``(elements (n,), points (n, q, 2), weights (n, q))``: chunks
        of non-interface elements first, then one batch per cut element.
        """
        mesh = self.mesh
        plain = np.flatnonzero(~self.classification.is_interface)
        batches = []
        for ids in chunks(plain, chunk_size):
            points, weights = gauss_cells(mesh.element_vertices[ids], order)
            batches.append((ids, points, weights))
        for element, cut in sorted(self.classification.cuts.items()):
            rule = split_cell_quadrature(mesh.element(element), cut, order)
            batches.append((np.array([element]), rule.points[None], rule.weights[None]))
        return batches

    def edge_batches(self, order, edges, chunk_size=DEFAULT_CHUNK_SIZE):
        """ Quadrature batches over ``edges``, cut edges split at the crossing

        Yields ``(edges (n,), points (n, q, 2), weights (n, q))``.
        """
        mesh = self.mesh
        edges = np.asarray(edges, dtype=np.int64)
        flags = self.classification.edge_flags[edges]
        batches = []
        for ids in chunks(edges[~flags], chunk_size):
            points, weights = gauss_segments(mesh.edge_points[ids, 0], mesh.edge_points[ids, 1], order)
            batches.append((ids, points, weights))
        for ids in chunks(edges[flags], chunk_size):
            points, weights = gauss_split_segments(mesh.edge_points[ids, 0], mesh.edge_points[ids, 1],
                                                   self.classification.edge_crossings[ids], order)
            batches.append((ids, points, weights))
        return batches
