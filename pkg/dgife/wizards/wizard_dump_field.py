# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

from ..components.core import WorkContext
from ..components.solver import LevelSolver
from ..exception import ValidationError
from ..models.error_analysis.exporter import export_error_field
from ..models.mesh.common import build_uniform


class WizardDumpField(object):
    """ Solves on the ``n x n`` mesh and writes the point-wise error """
    _name = 'dgife.dump.field.wizard'
    _description = 'Point-wise error field'

    def __init__(self, config, n=None):
        self.config = config
        self.n = n if n is not None else config.study.sizes[0]

    @staticmethod
    def _validate_size(n):
        if n < 1:
            raise ValidationError('n', 'mesh size must be positive, got %s' % n)

    def run(self):
        self._validate_size(self.n)
        work = WorkContext.from_config(self.config)
        result = LevelSolver(work).run(build_uniform(self.n, self.config.element_kind))
        path = work.output_path('field_%s_N%d.txt' % (self.config.discretization.scheme, self.n))
        export_error_field(result.nodal, work.solution, result.space, path,
                           resolution=self.config.output.field_resolution)
        return path
