# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

from ..components.core import WorkContext
from ..components.study import AdaptiveStudy
from ..exception import ValidationError


class WizardAdapt(object):
    _name = 'dgife.adapt.wizard'
    _description = 'Adaptive refinement study'

    def __init__(self, config):
        self.config = config

    @staticmethod
    def _validate_scheme(config):
        if config.discretization.scheme != 'dg':
            raise ValidationError('discretization.scheme',
                                  'refined meshes have hanging nodes, only dg supports them')

    def run(self):
        self._validate_scheme(self.config)
        work = WorkContext.from_config(self.config)
        state = AdaptiveStudy(work).run()
        state.uniform = work.extra.get('uniform')
        return state
