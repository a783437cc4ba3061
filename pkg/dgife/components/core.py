# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import logging
import os
from dataclasses import dataclass, field

from ..numerics.utils import worker_count

_logger = logging.getLogger(__name__)

_COMPONENTS = {}


@dataclass
class WorkContext:
    """ What every component of one run shares

    Built once per command from the validated configuration.
    """
    config: object
    curve: object
    beta: object
    solution: object
    workers: int = 1
    out_dir: str = 'out'
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_config(cls, config, solution=None):
        problem = config.problem
        solution = solution if solution is not None else problem.solution()
        return cls(config=config,
                   curve=problem.curve(),
                   beta=problem.coefficient(),
                   solution=solution,
                   workers=worker_count(config.solver.threads),
                   out_dir=config.output.directory)

    def output_path(self, name):
        if not os.path.isdir(self.out_dir):
            os.makedirs(self.out_dir)
        return os.path.join(self.out_dir, name)


class BaseDgIfeComponent(object):
    """ Base DG-IFE Component

    All components of the pipeline should inherit from it. Concrete
    components declare a ``_usage`` and are looked up with
    :meth:`component`, so that a study never imports the solver it runs.
    """

    _name = 'base.dgife.component'
    _usage = None

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if cls._usage:
            _COMPONENTS[cls._usage] = cls

    def __init__(self, work_context):
        self.work = work_context

    @property
    def config(self):
        return self.work.config

    @property
    def dg(self):
        return self.work.config.dg

    def component(self, usage, work_context=None):
        """ Component registered for ``usage``, on this work context by default """
        try:
            component_class = _COMPONENTS[usage]
        except KeyError:
            raise KeyError('No component for usage %s' % usage)
        return component_class(work_context or self.work)

    def run(self, *args, **kwargs):
        raise NotImplementedError
