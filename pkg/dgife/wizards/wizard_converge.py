# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

from ..components.core import WorkContext
from ..components.study import UniformStudy
from ..exception import ValidationError
from ..models.config.common import TIER_MAX_N


class WizardConverge(object):
    _name = 'dgife.converge.wizard'
    _description = 'Uniform convergence study'

    def __init__(self, config):
        self.config = config

    @staticmethod
    def _validate_sizes(config):
        limit = TIER_MAX_N[config.study.tier]
        if not any(n <= limit for n in config.study.sizes):
            raise ValidationError('study.sizes', 'every size is above the %s tier limit N = %d'
                                  % (config.study.tier, limit))
        if list(config.study.sizes) != sorted(set(config.study.sizes)):
            raise ValidationError('study.sizes', 'sizes must be increasing')

    def run(self):
        self._validate_sizes(self.config)
        work = WorkContext.from_config(self.config)
        return UniformStudy(work).run()
