# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Error norms of discrete solutions and convergence rates.

Exact values at quadrature points use the true side of the interface,
discrete values use the chord side through the IFE space. The maximum
error is taken over every quadrature point and every element vertex.

"""

import copy
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ...numerics.utils import ordered_map

_logger = logging.getLogger(__name__)

NORMS = ('Linf', 'L2', 'H1semi', 'Energy')


@dataclass
class ErrorRow:
    n: Optional[int]
    dof: int
    errors: Dict[str, float]
    rates: Dict[str, float] = field(default_factory=dict)
    elements: Optional[int] = None
    indicators: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def rate(self, norm):
        return self.rates.get(norm, float('nan'))


@dataclass
class ErrorReport:
    rows: List[ErrorRow] = field(default_factory=list)
    against_dof: bool = False
    label: str = ''

    def add(self, row):
        self.rows.append(row)
        return row

    def column(self, norm):
        return np.array([row.errors[norm] for row in self.rows])

    @property
    def dofs(self):
        return np.array([row.dof for row in self.rows])

    def __len__(self):
        return len(self.rows)


def _volume_errors(space, solution, nodal, batch):
    elements, points, weights = batch
    uh, grad_uh = space.combine(elements[:, None], points, nodal)
    x = points[..., 0]
    y = points[..., 1]
    sides = solution.sides(x, y)
    error = uh - solution.value(x, y, sides)
    grad_error = grad_uh - solution.gradient(x, y, sides)
    squared = np.sum(grad_error ** 2, axis=-1)
    beta = solution.beta(sides)
    return (elements,
            np.sum(weights * error ** 2, axis=1),
            np.sum(weights * squared, axis=1),
            np.sum(weights * beta * squared, axis=1),
            np.max(np.abs(error), axis=1))


def jump_energy(space, nodal, dg_config, workers=1):
    """ Sum over interior edges of the penalty weighted squared jumps """
    mesh = space.mesh
    edges = np.flatnonzero(mesh.edge_elements[:, 1] >= 0)
    if not edges.size:
        return 0.0

    def compute(batch):
        ids, points, weights = batch
        first, second = mesh.edge_elements[ids, 0], mesh.edge_elements[ids, 1]
        u1, _ = space.combine(first[:, None], points, nodal)
        u2, _ = space.combine(second[:, None], points, nodal)
        penalty = dg_config.penalty(mesh.edge_lengths[ids], space.classification.edge_flags[ids])
        return penalty * np.sum(weights * (u1 - u2) ** 2, axis=1), ids

    totals = np.zeros(mesh.edge_count)
    for values, ids in ordered_map(compute, space.edge_batches(dg_config.edge_order, edges), workers):
        totals[ids] = values
    return float(np.sum(totals))


def compute_norms(nodal, solution, space, dg_config, n=None, workers=1):
    """ Errors of the discrete solution with element-wise nodal values ``nodal``

    :param nodal: (E, d) nodal values, see ``DofMap.expand``
    :param solution: the exact solution
    :param space: the :class:`IfeSpace` of the mesh
    :param dg_config: quadrature orders and penalty of the energy norm
    :return: an :class:`ErrorRow`, its ``indicators`` holding the
             element-wise semi-H1 errors
    """
    mesh = space.mesh
    count = mesh.element_count
    l2 = np.zeros(count)
    h1 = np.zeros(count)
    weighted = np.zeros(count)
    maximum = np.zeros(count)

    def compute(batch):
        return _volume_errors(space, solution, nodal, batch)

    for elements, e_l2, e_h1, e_weighted, e_max in ordered_map(
            compute, space.volume_batches(dg_config.volume_order), workers):
        l2[elements] = e_l2
        h1[elements] = e_h1
        weighted[elements] = e_weighted
        maximum[elements] = e_max

    vertices = mesh.element_vertices
    exact = solution.value(vertices[..., 0], vertices[..., 1])
    maximum = np.maximum(maximum, np.max(np.abs(nodal - exact), axis=1))

    energy = float(np.sum(weighted)) + jump_energy(space, nodal, dg_config, workers)
    errors = {
        'Linf': float(np.max(maximum)),
        'L2': math.sqrt(float(np.sum(l2))),
        'H1semi': math.sqrt(float(np.sum(h1))),
        'Energy': math.sqrt(max(energy, 0.0)),
    }
    return ErrorRow(n=n, dof=int(nodal.size), errors=errors, elements=count,
                    indicators=np.sqrt(h1))


def convergence_rates(report):
    """ Copy of ``report`` with rates between consecutive rows

    Uniform studies use ``log(e_prev / e) / log(n / n_prev)``, which is
    ``log2(e_prev / e)`` when the mesh size halves. Studies against the
    number of unknowns use the slope ``log(e / e_prev) / log(dof / dof_prev)``.
    """
    result = copy.deepcopy(report)
    for row in result.rows:
        row.rates = {}
    with np.errstate(divide='ignore', invalid='ignore'):
        for previous, row in zip(result.rows[:-1], result.rows[1:]):
            for norm in NORMS:
                ratio = np.float64(previous.errors[norm]) / np.float64(row.errors[norm])
                if result.against_dof:
                    rate = -np.log(ratio) / np.log(np.float64(row.dof) / previous.dof)
                elif previous.n and row.n:
                    rate = np.log(ratio) / np.log(np.float64(row.n) / previous.n)
                else:
                    rate = np.log2(ratio)
                row.rates[norm] = float(rate) if np.isfinite(rate) else (
                    0.0 if previous.errors[norm] == row.errors[norm] else float('nan'))
    return result


def fit_slope(dofs, errors, last=None):
    """ Least squares slope of log(error) against log(dof) over the last points """
    dofs = np.asarray(dofs, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if last is not None:
        dofs = dofs[-last:]
        errors = errors[-last:]
    if len(dofs) < 2:
        raise ValueError('Need at least two points to fit a slope')
    return float(np.polyfit(np.log(dofs), np.log(errors), 1)[0])
