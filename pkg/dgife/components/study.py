# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Studies over sequences of meshes.

A uniform study solves the ``N x N`` meshes of ``study.sizes`` and
computes the rates between consecutive sizes. An adaptive study runs the
solve, mark, refine loop from the ``initial_n`` mesh and computes the
rates against the number of unknowns; with ``compare_uniform`` it also
runs uniform rectangle meshes until they pass the final adaptive size.

"""

import logging
import os

from ..models.adaptivity.common import adapt_loop
from ..models.config.common import TIER_MAX_N
from ..models.error_analysis.common import ErrorReport, convergence_rates
from ..models.mesh.common import ElementKind, build_uniform
from .core import BaseDgIfeComponent, WorkContext

_logger = logging.getLogger(__name__)


class BaseStudy(BaseDgIfeComponent):

    _name = 'dgife.base.study'

    @property
    def max_n(self):
        return TIER_MAX_N[self.config.study.tier]

    def capped_sizes(self, sizes):
        kept = [n for n in sizes if n <= self.max_n]
        dropped = [n for n in sizes if n > self.max_n]
        if dropped:
            _logger.warning('Sizes %s are above the %s tier limit N = %d and are skipped',
                            ', '.join(str(n) for n in dropped), self.config.study.tier, self.max_n)
        return kept

    def solve_level(self, mesh, label):
        result = self.component('level.solver').run(mesh, label)
        self.component('run.exporter').level_dumps(result, label.replace('=', ''))
        return result


class UniformStudy(BaseStudy):
    """ Convergence table over uniform meshes """

    _name = 'dgife.uniform.study'
    _usage = 'uniform.study'

    def run(self, sizes=None, kind=None, csv_name=None):
        sizes = self.capped_sizes(sizes if sizes is not None else self.config.study.sizes)
        kind = ElementKind(kind) if kind is not None else self.config.element_kind
        report = ErrorReport(label='uniform %s' % kind.value)
        for n in sizes:
            result = self.solve_level(build_uniform(n, kind), 'N=%d' % n)
            report.add(result.row)
        report = convergence_rates(report)
        if report.rows:
            self.component('run.exporter').run(report, csv_name)
        return report


class AdaptiveStudy(BaseStudy):
    """ Solve, mark, refine loop with an optional uniform reference curve """

    _name = 'dgife.adaptive.study'
    _usage = 'adaptive.study'

    def _solve(self, mesh, iteration):
        return self.solve_level(mesh, 'iter%02d' % iteration)

    def run(self):
        study = self.config.study
        state = adapt_loop(self.config, study.strategy, study.max_iters, self._solve)
        state.report = convergence_rates(state.report)
        state.report.label = 'adaptive %s' % study.strategy
        self.component('run.exporter').run(state.report)
        if study.compare_uniform:
            self.work.extra['uniform'] = self.uniform_reference(state.report.rows[-1].dof)
        return state

    def uniform_reference(self, final_dof):
        """ Uniform rectangle meshes ``initial_n * 2**k`` until their DoF pass ``final_dof`` """
        sizes = []
        n = self.config.study.initial_n
        while n <= self.max_n:
            sizes.append(n)
            if n * n * ElementKind.RECTANGLE.vertex_count > final_dof:
                break
            n *= 2
        else:
            _logger.warning('Uniform reference stopped at the %s tier limit', self.config.study.tier)
        stem, extension = os.path.splitext(self.config.output.csv_name)
        uniform = self.component('uniform.study')
        return uniform.run(sizes=sizes, kind=ElementKind.RECTANGLE,
                           csv_name='%s_uniform%s' % (stem, extension or '.csv'))


def run_convergence_study(config, solution=None):
    """ Uniform study of ``config``, returns the :class:`ErrorReport` """
    return UniformStudy(WorkContext.from_config(config, solution)).run()


def run_adaptive_study(config, solution=None):
    """ Adaptive study of ``config``, returns the :class:`AdaptiveState` """
    work = WorkContext.from_config(config, solution)
    state = AdaptiveStudy(work).run()
    state.uniform = work.extra.get('uniform')
    return state
