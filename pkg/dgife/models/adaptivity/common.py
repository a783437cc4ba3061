# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Marking strategies and the solve, mark, refine loop.

The element indicators are the exact local semi-H1 errors computed by
the norms of every solve. ``mark_interface`` refines every interface
element, ``mark_dorfler`` the smallest set of largest indicators whose
squares cover a fraction ``theta`` of the total.

"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..error_analysis.common import ErrorReport
from ..mesh.common import build_uniform
from ..mesh.refiner import refine

_logger = logging.getLogger(__name__)

INTERFACE = 'interface'
DORFLER = 'dorfler'
STRATEGIES = (INTERFACE, DORFLER)


@dataclass
class AdaptiveState:
    strategy: str
    theta: float = 0.0
    meshes: list = field(default_factory=list)
    report: ErrorReport = field(default_factory=lambda: ErrorReport(against_dof=True))
    indicators: List[np.ndarray] = field(default_factory=list)
    marked: List[np.ndarray] = field(default_factory=list)
    uniform: Optional[ErrorReport] = None

    @property
    def iterations(self):
        return len(self.meshes)

    @property
    def mesh(self):
        return self.meshes[-1] if self.meshes else None

    @property
    def element_counts(self):
        return [mesh.element_count for mesh in self.meshes]

    def record(self, mesh, row):
        self.meshes.append(mesh)
        self.report.add(row)
        self.indicators.append(row.indicators)


def mark_interface(classification):
    """ Every interface element, in ascending id order """
    return classification.interface_elements


def mark_dorfler(indicators, theta):
    """ Bulk marking of the largest indicators

    Indicators are sorted descending, ties by ascending element id, and
    the shortest prefix whose squared sum reaches ``theta`` of the total
    is returned in ascending id order.
    """
    if not 0.0 < theta < 1.0:
        raise ValueError('theta must be in (0, 1), got %s' % theta)
    squared = np.asarray(indicators, dtype=float) ** 2
    total = float(np.sum(squared))
    if not squared.size or total <= 0.0:
        return np.zeros(0, dtype=np.int64)
    order = np.lexsort((np.arange(squared.size), -squared))
    covered = np.cumsum(squared[order])
    count = int(np.searchsorted(covered, theta * total, side='left')) + 1
    return np.sort(order[:min(count, squared.size)]).astype(np.int64)


def _mark(state, result):
    if state.strategy == INTERFACE:
        return mark_interface(result.classification)
    return mark_dorfler(result.row.indicators, state.theta)


def adapt_loop(config, strategy, max_iters, solve, mesh=None):
    """ Solve, mark and refine until ``max_iters`` refinements are done

    :param config: the :class:`RunConfig`, gives the first mesh, theta,
                   the level cap and the DoF cap
    :param strategy: ``interface`` or ``dorfler``
    :param max_iters: number of refinements, the loop solves at most
                      ``max_iters + 1`` meshes
    :param solve: callable ``solve(mesh, iteration)`` returning an object
                  with ``row`` (an ``ErrorRow`` with indicators) and
                  ``classification``
    :param mesh: first mesh, a uniform ``initial_n`` mesh by default
    :return: the :class:`AdaptiveState`
    """
    if strategy not in STRATEGIES:
        raise ValueError('Unknown marking strategy %s' % strategy)
    study = config.study
    if mesh is None:
        mesh = build_uniform(study.initial_n, config.element_kind)
    state = AdaptiveState(strategy=strategy, theta=study.theta)
    for iteration in range(max_iters + 1):
        result = solve(mesh, iteration)
        state.record(mesh, result.row)
        if iteration == max_iters:
            break
        if study.max_dof is not None and result.row.dof >= study.max_dof:
            _logger.info('Adaptive loop stopped at %d DoF, the limit is %d', result.row.dof, study.max_dof)
            break
        marked = _mark(state, result)
        if study.max_level is not None and marked.size:
            marked = marked[mesh.levels[marked] < study.max_level]
        state.marked.append(marked)
        _logger.info('Adaptive iteration %d: %d elements, %d DoF, %d marked',
                     iteration, mesh.element_count, result.row.dof, marked.size)
        if not marked.size:
            break
        mesh = refine(mesh, marked)
    return state
