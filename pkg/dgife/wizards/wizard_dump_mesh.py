# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import logging

from ..components.core import WorkContext
from ..exception import ValidationError
from ..models.adaptivity.common import mark_interface
from ..models.mesh.classifier import classify, validate_hypotheses
from ..models.mesh.common import build_uniform
from ..models.mesh.exporter import dump_mesh
from ..models.mesh.refiner import refine

_logger = logging.getLogger(__name__)


class WizardDumpMesh(object):
    """ Writes the classified mesh of size ``n``, optionally refined
    ``levels`` times at the interface
    """
    _name = 'dgife.dump.mesh.wizard'
    _description = 'Mesh dump'

    def __init__(self, config, n=None, levels=0):
        self.config = config
        self.n = n if n is not None else config.study.initial_n
        self.levels = levels

    @staticmethod
    def _validate_size(n, levels):
        if n < 1:
            raise ValidationError('n', 'mesh size must be positive, got %s' % n)
        if levels < 0:
            raise ValidationError('levels', 'refinement levels must not be negative, got %s' % levels)

    def run(self):
        self._validate_size(self.n, self.levels)
        work = WorkContext.from_config(self.config)
        mesh = build_uniform(self.n, self.config.element_kind)
        classification = classify(mesh, work.curve)
        for _ in range(self.levels):
            marked = mark_interface(classification)
            if not marked.size:
                break
            mesh = refine(mesh, marked)
            classification = classify(mesh, work.curve)
        validate_hypotheses(mesh, classification)
        _logger.info('Mesh N=%d, %d elements, %d interface elements, shape regularity %.3f',
                     self.n, mesh.element_count, classification.interface_count,
                     mesh.shape_regularity())
        path = work.output_path('mesh_N%d_L%d.txt' % (self.n, self.levels))
        return dump_mesh(mesh, path, classification)
