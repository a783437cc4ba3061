# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from ..exception import DgIfeError, StageError
from ..models.error_analysis.common import compute_norms
from ..models.ife_space.space import IfeSpace
from ..models.mesh.classifier import classify, validate_hypotheses
from ..numerics.sparse import solve_direct, solve_iterative
from .core import BaseDgIfeComponent

_logger = logging.getLogger(__name__)


@dataclass
class LevelResult:
    label: str
    mesh: object
    classification: object
    space: object
    dof_map: object
    assembled: object
    system: object
    vector: np.ndarray
    nodal: np.ndarray
    row: object
    timings: dict = field(default_factory=dict)

    @property
    def dof(self):
        return self.dof_map.total


class LevelSolver(BaseDgIfeComponent):
    """ Runs the whole pipeline on one mesh

    classify, validate, build the IFE space, assemble, impose the
    boundary values, solve and measure the errors. A failure in any
    stage is raised as :class:`StageError` naming the stage and the mesh.
    """

    _name = 'dgife.level.solver'
    _usage = 'level.solver'

    def __init__(self, work_context):
        super(LevelSolver, self).__init__(work_context)
        self.timings = {}

    @contextmanager
    def _stage(self, stage, label):
        start = time.perf_counter()
        try:
            yield
        except DgIfeError as err:
            raise StageError(stage, label, err) from err
        self.timings[stage] = time.perf_counter() - start

    def solve(self, system):
        settings = self.config.solver
        if settings.method == 'iterative':
            return solve_iterative(system.matrix, system.rhs, tol=settings.tol,
                                   max_iter=settings.max_iter, restart=settings.restart,
                                   preconditioner=settings.preconditioner)
        return solve_direct(system.matrix, system.rhs, ordering=settings.ordering)

    def run(self, mesh, label=None):
        label = label or 'N=%d' % mesh.base_n
        self.timings = {}
        work = self.work
        with self._stage('classify', label):
            classification = classify(mesh, work.curve)
            validate_hypotheses(mesh, classification)
        with self._stage('space', label):
            space = IfeSpace(mesh, classification, work.beta)
        assembler = self.component('system.assembler')
        with self._stage('assemble', label):
            dof_map = assembler.dof_map(mesh)
            assembled, system = assembler.run(space, dof_map)
        with self._stage('solve', label):
            vector = self.solve(system)
        with self._stage('norms', label):
            nodal = dof_map.expand(vector)
            row = compute_norms(nodal, work.solution, space, self.dg,
                                n=mesh.base_n if mesh.is_conforming else None,
                                workers=work.workers)
        row.dof = dof_map.total
        _logger.info('%s: %d elements, %d interface, %d DoF, solve %.2fs, '
                     'Linf %.4e L2 %.4e H1 %.4e energy %.4e',
                     label, mesh.element_count, classification.interface_count, dof_map.total,
                     self.timings.get('solve', 0.0), row.errors['Linf'], row.errors['L2'],
                     row.errors['H1semi'], row.errors['Energy'])
        return LevelResult(label=label, mesh=mesh, classification=classification, space=space,
                           dof_map=dof_map, assembled=assembled, system=system, vector=vector,
                           nodal=nodal, row=row, timings=dict(self.timings))
