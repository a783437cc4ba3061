# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

from ..components.checker import InvariantChecker
from ..components.core import WorkContext
from ..exception import ValidationError


class WizardCheck(object):
    _name = 'dgife.check.wizard'
    _description = 'Invariant suite'

    def __init__(self, config):
        self.config = config

    @staticmethod
    def _validate_sizes(config):
        if not config.study.sizes:
            raise ValidationError('study.sizes', 'the checks need at least one size')

    def run(self):
        """ Check results, the command succeeds when all of them passed """
        self._validate_sizes(self.config)
        return InvariantChecker(WorkContext.from_config(self.config)).run()
