# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

from dataclasses import dataclass

import numpy as np

from ...exception import NonConformingMesh


@dataclass(frozen=True)
class DofMap:
    """ Global numbering of the nodal degrees of freedom

    ``local_dofs[k, i]`` is the global index of the value at vertex ``i``
    of element ``k``. Discontinuous maps give every element its own copy
    of its vertices, continuous maps share one index per mesh node.
    """
    local_dofs: np.ndarray
    total: int
    positions: np.ndarray
    boundary: np.ndarray
    continuous: bool = False

    def expand(self, vector):
        """ Element-wise nodal values (E, d) of a global vector """
        return np.asarray(vector)[self.local_dofs]

    @property
    def interior(self):
        return np.flatnonzero(~self.boundary)


def discontinuous_dofs(mesh):
    count = mesh.element_count * mesh.vertex_count
    return DofMap(local_dofs=np.arange(count, dtype=np.int64).reshape(mesh.element_count, -1),
                  total=count,
                  positions=mesh.element_vertices.reshape(-1, 2),
                  boundary=mesh.node_on_boundary[mesh.elements].reshape(-1),
                  continuous=False)


def continuous_dofs(mesh):
    if not mesh.is_conforming:
        raise NonConformingMesh('Continuous degrees of freedom need a mesh without hanging nodes')
    return DofMap(local_dofs=mesh.elements.astype(np.int64),
                  total=mesh.node_count,
                  positions=mesh.nodes,
                  boundary=mesh.node_on_boundary.copy(),
                  continuous=True)


def interpolate(exact_u, dof_map):
    """ Nodal interpolant of ``exact_u(x, y)`` as a global vector """
    positions = dof_map.positions
    return np.asarray(exact_u(positions[:, 0], positions[:, 1]), dtype=float)
