# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Run configuration.

Every section is a frozen dataclass, every key is declared with
:func:`setting` which records its text parser and a help string. The
defaults reproduce the triangle study with the symmetric scheme,
``alpha = 1``, ``sigma0 = 1000``, ``beta = (1, 10)`` and ``p = 5``.

"""

import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ...exception import ValidationError
from ..geometry.common import CoefficientField, EllipseCurve
from ..mesh.common import ElementKind
from ..problem.common import ManufacturedSolution

_logger = logging.getLogger(__name__)

DEFAULT_BETA_MINUS = 1.0
DEFAULT_BETA_PLUS = 10.0
DEFAULT_CENTER = (-0.2, 0.1)
DEFAULT_SEMI_AXIS_A = math.pi / 6.28
SEMI_AXIS_RATIO = 1.5
DEFAULT_EXPONENT = 5.0
DEFAULT_SIGMA0 = 1000.0
DEFAULT_QUAD_ORDER = 5
DEFAULT_SIZES = (10, 20, 40, 80, 160)
DEFAULT_THETA = 0.2
DEFAULT_FIELD_RESOLUTION = 256

EPSILONS = (-1, 0, 1)
SCHEMES = ('dg', 'galerkin')
MODES = ('uniform', 'adaptive')
STRATEGIES = ('interface', 'dorfler')
TIERS = ('desk', 'large')
METHODS = ('direct', 'iterative')
ORDERINGS = ('colamd', 'rcm')
PRECONDITIONERS = ('ilu', 'jacobi')
TIER_MAX_N = {'desk': 320, 'large': 1280}


def _boolean(text):
    value = text.strip().lower()
    if value in ('1', 'true', 'yes', 'on'):
        return True
    if value in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError('not a boolean: %r' % text)


def _optional(parser):
    def parse(text):
        if text.strip().lower() in ('', 'none'):
            return None
        return parser(text)
    return parse


def _int_list(text):
    values = tuple(int(item) for item in text.replace(',', ' ').split())
    if not values:
        raise ValueError('empty list')
    return values


def _text(text):
    return text.strip()


def setting(default, parser, help=''):
    """ Declare a configuration key with its parser and documentation """
    return dataclasses.field(default=default, metadata={'parser': parser, 'help': help})


@dataclass(frozen=True)
class ProblemSettings:
    beta_minus: float = setting(DEFAULT_BETA_MINUS, float, 'Coefficient inside the ellipse')
    beta_plus: float = setting(DEFAULT_BETA_PLUS, float, 'Coefficient outside the ellipse')
    center_x: float = setting(DEFAULT_CENTER[0], float, 'Ellipse center, x')
    center_y: float = setting(DEFAULT_CENTER[1], float, 'Ellipse center, y')
    semi_axis_a: float = setting(DEFAULT_SEMI_AXIS_A, float, 'Semi axis along x')
    semi_axis_b: Optional[float] = setting(None, _optional(float), 'Semi axis along y, none for 1.5 a')
    exponent: float = setting(DEFAULT_EXPONENT, float, 'Power p of the manufactured solution')

    @property
    def b(self):
        return SEMI_AXIS_RATIO * self.semi_axis_a if self.semi_axis_b is None else self.semi_axis_b

    def curve(self):
        return EllipseCurve(center=(self.center_x, self.center_y), a=self.semi_axis_a, b=self.b)

    def coefficient(self):
        return CoefficientField(self.beta_minus, self.beta_plus)

    def solution(self):
        return ManufacturedSolution(curve=self.curve(), beta=self.coefficient(), p=self.exponent)


@dataclass(frozen=True)
class DgConfig:
    """ Parameters of the interior penalty form """
    epsilon: int = -1
    alpha: float = 1.0
    sigma0: float = DEFAULT_SIGMA0
    sigma0_interface: Optional[float] = None
    volume_order: int = DEFAULT_QUAD_ORDER
    edge_order: int = DEFAULT_QUAD_ORDER

    @property
    def symmetric(self):
        return self.epsilon == -1

    def penalty(self, lengths, interface=None):
        """ ``sigma0_B / |B|**alpha`` for every edge length """
        lengths = np.asarray(lengths, dtype=float)
        sigma = np.full(lengths.shape, self.sigma0)
        if self.sigma0_interface is not None and interface is not None:
            sigma = np.where(interface, self.sigma0_interface, sigma)
        return sigma / lengths ** self.alpha


@dataclass(frozen=True)
class DiscretizationSettings:
    element: str = setting(ElementKind.TRIANGLE.value, _text, 'triangle or rectangle')
    scheme: str = setting('dg', _text, 'dg (interior penalty) or galerkin (continuous IFE)')
    epsilon: int = setting(-1, int, '-1 symmetric, 0 incomplete, 1 non-symmetric')
    alpha: float = setting(1.0, float, 'Penalty power of the edge length')
    sigma0: float = setting(DEFAULT_SIGMA0, float, 'Penalty on every interior edge')
    sigma0_interface: Optional[float] = setting(None, _optional(float),
                                                'Penalty on interface edges, none for sigma0')
    volume_order: int = setting(DEFAULT_QUAD_ORDER, int, 'Gauss order on cells')
    edge_order: int = setting(DEFAULT_QUAD_ORDER, int, 'Gauss order on edges')

    def dg_config(self):
        return DgConfig(epsilon=self.epsilon, alpha=self.alpha, sigma0=self.sigma0,
                        sigma0_interface=self.sigma0_interface,
                        volume_order=self.volume_order, edge_order=self.edge_order)


@dataclass(frozen=True)
class StudySettings:
    mode: str = setting('uniform', _text, 'uniform or adaptive')
    sizes: Tuple[int, ...] = setting(DEFAULT_SIZES, _int_list, 'Cells per axis of the uniform study')
    initial_n: int = setting(10, int, 'Cells per axis of the first adaptive mesh')
    strategy: str = setting('interface', _text, 'interface or dorfler marking')
    theta: float = setting(DEFAULT_THETA, float, 'Bulk fraction of the Dorfler marking')
    max_iters: int = setting(6, int, 'Refinements of the adaptive loop')
    max_level: Optional[int] = setting(None, _optional(int), 'Do not refine elements at this level')
    max_dof: Optional[int] = setting(None, _optional(int), 'Stop refining once a mesh has this many DoF')
    compare_uniform: bool = setting(False, _boolean, 'Add the uniform rectangle curve to adaptive runs')
    tier: str = setting('desk', _text, 'desk or large, caps the mesh sizes')


@dataclass(frozen=True)
class SolverSettings:
    method: str = setting('direct', _text, 'direct (sparse LU) or iterative (GMRES)')
    ordering: str = setting('colamd', _text, 'colamd or rcm fill ordering of the LU')
    tol: float = setting(1e-10, float, 'Relative residual of the iterative solver')
    max_iter: int = setting(2000, int, 'Iterations of the iterative solver')
    restart: int = setting(100, int, 'GMRES restart length')
    preconditioner: str = setting('ilu', _text, 'ilu (incomplete LU) or jacobi preconditioning of GMRES')
    threads: int = setting(0, int, 'Assembly workers, 0 reads DGIFE_THREADS')


@dataclass(frozen=True)
class OutputSettings:
    directory: str = setting('out', _text, 'Output directory')
    csv_name: str = setting('errors.csv', _text, 'Error table file name')
    dump_meshes: bool = setting(False, _boolean, 'Write one mesh dump per level')
    dump_fields: bool = setting(False, _boolean, 'Write one error field per level')
    field_resolution: int = setting(DEFAULT_FIELD_RESOLUTION, int, 'Raster size of error fields')
    dump_matrix: bool = setting(False, _boolean, 'Write the assembled matrices')


@dataclass(frozen=True)
class RunSettings:
    seed: int = setting(0, int, 'Seed of the randomized checks')


@dataclass(frozen=True)
class RunConfig:
    problem: ProblemSettings = ProblemSettings()
    discretization: DiscretizationSettings = DiscretizationSettings()
    study: StudySettings = StudySettings()
    solver: SolverSettings = SolverSettings()
    output: OutputSettings = OutputSettings()
    run: RunSettings = RunSettings()

    @property
    def dg(self):
        return self.discretization.dg_config()

    @property
    def element_kind(self):
        return ElementKind(self.discretization.element)


SECTIONS = ('problem', 'discretization', 'study', 'solver', 'output', 'run')


def section_fields(section):
    return dataclasses.fields(section)


def _check(condition, field, detail):
    if not condition:
        raise ValidationError(field, detail)


def _check_choice(value, choices, field):
    _check(value in choices, field, '%r not in %s' % (value, ', '.join(str(c) for c in choices)))


def validate(config):
    """ Check the ranges of every key

    :raises ValidationError: with the ``section.key`` of the first bad value
    """
    problem = config.problem
    _check(problem.beta_minus > 0.0, 'problem.beta_minus', 'must be positive')
    _check(problem.beta_plus > 0.0, 'problem.beta_plus', 'must be positive')
    _check(problem.semi_axis_a > 0.0, 'problem.semi_axis_a', 'must be positive')
    _check(problem.semi_axis_b is None or problem.semi_axis_b > 0.0,
           'problem.semi_axis_b', 'must be positive')
    _check(problem.exponent > 0.0, 'problem.exponent', 'must be positive')

    disc = config.discretization
    _check_choice(disc.element, [kind.value for kind in ElementKind], 'discretization.element')
    _check_choice(disc.scheme, SCHEMES, 'discretization.scheme')
    _check_choice(disc.epsilon, EPSILONS, 'discretization.epsilon')
    _check(disc.alpha > 0.0, 'discretization.alpha', 'must be positive')
    _check(disc.sigma0 >= 0.0, 'discretization.sigma0', 'must not be negative')
    _check(disc.sigma0 > 0.0 or disc.epsilon == 1 or disc.scheme == 'galerkin',
           'discretization.sigma0', 'must be positive when epsilon is 0 or -1')
    _check(disc.sigma0_interface is None or disc.sigma0_interface >= 0.0,
           'discretization.sigma0_interface', 'must not be negative')
    for name in ('volume_order', 'edge_order'):
        _check(1 <= getattr(disc, name) <= 10, 'discretization.%s' % name, 'must be in [1, 10]')
    if disc.alpha != 1.0:
        _logger.warning('alpha = %s is outside the analysed setting alpha = 1', disc.alpha)

    study = config.study
    _check_choice(study.mode, MODES, 'study.mode')
    _check_choice(study.strategy, STRATEGIES, 'study.strategy')
    _check_choice(study.tier, TIERS, 'study.tier')
    _check(all(n >= 1 for n in study.sizes), 'study.sizes', 'sizes must be positive')
    _check(study.initial_n >= 1, 'study.initial_n', 'must be positive')
    _check(0.0 < study.theta < 1.0, 'study.theta', 'must be in (0, 1)')
    _check(study.max_iters >= 0, 'study.max_iters', 'must not be negative')
    _check(study.max_level is None or study.max_level >= 0, 'study.max_level', 'must not be negative')
    _check(study.max_dof is None or study.max_dof >= 1, 'study.max_dof', 'must be positive')

    solver = config.solver
    _check_choice(solver.method, METHODS, 'solver.method')
    _check_choice(solver.ordering, ORDERINGS, 'solver.ordering')
    _check_choice(solver.preconditioner, PRECONDITIONERS, 'solver.preconditioner')
    _check(solver.tol > 0.0, 'solver.tol', 'must be positive')
    _check(solver.max_iter >= 1, 'solver.max_iter', 'must be positive')
    _check(solver.restart >= 1, 'solver.restart', 'must be positive')
    _check(solver.threads >= 0, 'solver.threads', 'must not be negative')

    _check(config.output.field_resolution >= 1, 'output.field_resolution', 'must be positive')
    return config


def with_overrides(config, quad_order=None, solver=None, tier=None, out=None):
    """ Apply the command line overrides on top of a parsed configuration """
    if quad_order is not None:
        config = dataclasses.replace(config, discretization=dataclasses.replace(
            config.discretization, volume_order=quad_order, edge_order=quad_order))
    if solver is not None:
        config = dataclasses.replace(config, solver=dataclasses.replace(config.solver, method=solver))
    if tier is not None:
        config = dataclasses.replace(config, study=dataclasses.replace(config.study, tier=tier))
    if out is not None:
        config = dataclasses.replace(config, output=dataclasses.replace(config.output, directory=out))
    return validate(config)
