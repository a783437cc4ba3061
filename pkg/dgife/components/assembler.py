# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Assembly of the interior penalty system.

The bilinear form is

    a(w, v) = sum_K int_K beta grad w . grad v
              - sum_B int_B {beta grad w . n_B} [v]
              + epsilon sum_B int_B {beta grad v . n_B} [w]
              + sum_B sigma0_B / |B|**alpha int_B [w] [v]

over the interior edges B, with ``[v] = v1 - v2`` and ``n_B`` pointing
out of ``K_1``, the owner with the smaller id. Local blocks are computed
per quadrature batch and collected as triplets, which are sorted by
``(row, col)`` before being summed.

"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..exception import MissingNeighbor
from ..models.ife_space.dofs import continuous_dofs, discontinuous_dofs
from ..numerics.sparse import compress
from ..numerics.utils import ordered_map
from .core import BaseDgIfeComponent

_logger = logging.getLogger(__name__)


class Triplets(object):
    """ Coordinate accumulator of local blocks """

    def __init__(self):
        self._rows = []
        self._cols = []
        self._vals = []

    def add_blocks(self, rows, cols, blocks):
        """ Scatter blocks (n, a, b) at rows (n, a) and columns (n, b) """
        rows = np.asarray(rows)
        cols = np.asarray(cols)
        blocks = np.asarray(blocks, dtype=float)
        self._rows.append(np.broadcast_to(rows[:, :, None], blocks.shape).ravel())
        self._cols.append(np.broadcast_to(cols[:, None, :], blocks.shape).ravel())
        self._vals.append(blocks.ravel())

    def extend(self, other):
        self._rows.extend(other._rows)
        self._cols.extend(other._cols)
        self._vals.extend(other._vals)

    def __len__(self):
        return int(sum(len(v) for v in self._vals))

    def to_csr(self, size):
        if not self._vals:
            return sp.csr_matrix((size, size))
        rows = np.concatenate(self._rows)
        cols = np.concatenate(self._cols)
        vals = np.concatenate(self._vals)
        order = np.lexsort((cols, rows))
        matrix = sp.coo_matrix((vals[order], (rows[order], cols[order])), shape=(size, size))
        return compress(matrix)


@dataclass
class SparseSystem:
    matrix: sp.csr_matrix
    rhs: np.ndarray
    dof_map: object

    @property
    def size(self):
        return self.dof_map.total


def assemble_volume(space, dof_map, order, workers=1, triplets=None):
    """ Diffusion blocks ``int_K beta grad phi_j . grad phi_i`` of every element """
    triplets = triplets if triplets is not None else Triplets()

    def compute(batch):
        elements, points, weights = batch
        _, grads, betas = space.evaluate(elements[:, None], points)
        return elements, np.einsum('nq,nq,nqik,nqjk->nij', weights, betas, grads, grads)

    for elements, blocks in ordered_map(compute, space.volume_batches(order), workers):
        dofs = dof_map.local_dofs[elements]
        triplets.add_blocks(dofs, dofs, blocks)
    return triplets


def _edge_traces(space, edges, points):
    mesh = space.mesh
    first = mesh.edge_elements[edges, 0]
    second = mesh.edge_elements[edges, 1]
    normals = mesh.edge_normals[edges]
    v1, g1, b1 = space.evaluate(first[:, None], points)
    v2, g2, b2 = space.evaluate(second[:, None], points)
    jump = np.concatenate([v1, -v2], axis=-1)
    flux1 = b1[..., None] * np.einsum('nqik,nk->nqi', g1, normals)
    flux2 = b2[..., None] * np.einsum('nqik,nk->nqi', g2, normals)
    average = 0.5 * np.concatenate([flux1, flux2], axis=-1)
    return first, second, jump, average


def interior_edges(mesh):
    """ Interior edges, each with two owners

    :raises MissingNeighbor: for an interior edge with a single owner
    """
    interior = mesh.interior_edges
    lonely = interior[mesh.edge_elements[interior, 1] < 0]
    if lonely.size:
        raise MissingNeighbor(int(lonely[0]))
    return interior


def assemble_edges(space, dof_map, dg_config, workers=1, triplets=None, penalty_only=False):
    """ Consistency, symmetrization and penalty blocks of the interior edges

    :param penalty_only: keep the penalty term alone, used for the
                         energy norm Gram matrix
    """
    mesh = space.mesh
    triplets = triplets if triplets is not None else Triplets()
    edges = interior_edges(mesh)
    if not edges.size:
        return triplets
    flags = space.classification.edge_flags

    def compute(batch):
        ids, points, weights = batch
        first, second, jump, average = _edge_traces(space, ids, points)
        penalty = dg_config.penalty(mesh.edge_lengths[ids], flags[ids])
        blocks = penalty[:, None, None] * np.einsum('nq,nqi,nqj->nij', weights, jump, jump)
        if not penalty_only:
            consistency = np.einsum('nq,nqi,nqj->nij', weights, jump, average)
            blocks += dg_config.epsilon * np.swapaxes(consistency, 1, 2) - consistency
        return first, second, blocks

    local = dof_map.local_dofs
    for first, second, blocks in ordered_map(
            compute, space.edge_batches(dg_config.edge_order, edges), workers):
        dofs = np.concatenate([local[first], local[second]], axis=1)
        triplets.add_blocks(dofs, dofs, blocks)
    return triplets


def assemble_rhs(space, dof_map, solution, order, workers=1):
    """ Load vector ``int_K f phi_i`` with f on the true side of the interface """

    def compute(batch):
        elements, points, weights = batch
        values, _, _ = space.evaluate(elements[:, None], points)
        x = points[..., 0]
        y = points[..., 1]
        source = solution.source(x, y, solution.sides(x, y))
        return elements, np.einsum('nq,nq,nqi->ni', weights, source, values)

    rhs = np.zeros(dof_map.total)
    for elements, local in ordered_map(compute, space.volume_batches(order), workers):
        dofs = dof_map.local_dofs[elements]
        rhs += np.bincount(dofs.ravel(), weights=local.ravel(), minlength=dof_map.total)
    return rhs


def apply_dirichlet(system, g):
    """ Strong boundary values by symmetric elimination

    Boundary rows and columns are cleared, the diagonal set to one and
    the column contributions moved to the right hand side.

    :param g: boundary function ``g(x, y)``
    """
    dof_map = system.dof_map
    fixed = dof_map.boundary
    values = np.zeros(dof_map.total)
    if np.any(fixed):
        positions = dof_map.positions[fixed]
        values[fixed] = g(positions[:, 0], positions[:, 1])
    matrix = compress(system.matrix)
    rhs = system.rhs - matrix @ values
    keep = sp.diags((~fixed).astype(float))
    matrix = keep @ matrix @ keep + sp.diags(fixed.astype(float))
    rhs = np.where(fixed, values, rhs)
    return SparseSystem(matrix=compress(matrix), rhs=rhs, dof_map=dof_map)


def energy_gram(space, dof_map, dg_config, workers=1):
    """ Gram matrix of the energy norm: weighted volume part plus edge penalties """
    triplets = assemble_volume(space, dof_map, dg_config.volume_order, workers)
    assemble_edges(space, dof_map, dg_config, workers, triplets=triplets, penalty_only=True)
    return triplets.to_csr(dof_map.total)


class DgAssembler(BaseDgIfeComponent):
    """ Builds the sparse system of one mesh

    ``scheme = dg`` gives the interior penalty system on discontinuous
    nodal unknowns, ``scheme = galerkin`` the volume term alone on one
    unknown per mesh node.
    """

    _name = 'dgife.system.assembler'
    _usage = 'system.assembler'

    def dof_map(self, mesh):
        if self.config.discretization.scheme == 'galerkin':
            return continuous_dofs(mesh)
        return discontinuous_dofs(mesh)

    def matrix(self, space, dof_map):
        dg = self.dg
        workers = self.work.workers
        triplets = assemble_volume(space, dof_map, dg.volume_order, workers)
        if not dof_map.continuous:
            assemble_edges(space, dof_map, dg, workers, triplets=triplets)
        matrix = triplets.to_csr(dof_map.total)
        _logger.debug('Assembled %d x %d matrix, %d non-zeros', matrix.shape[0], matrix.shape[1],
                      matrix.nnz)
        return matrix

    def run(self, space, dof_map):
        """ Assembled system with the boundary values of the exact solution """
        solution = self.work.solution
        rhs = assemble_rhs(space, dof_map, solution, self.dg.volume_order, self.work.workers)
        system = SparseSystem(matrix=self.matrix(space, dof_map), rhs=rhs, dof_map=dof_map)
        return system, apply_dirichlet(system, solution)
