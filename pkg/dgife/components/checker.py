# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Invariant suite run by the ``check`` command.

Every check returns a :class:`CheckResult` and logs one line; the suite
passes when every check passes. Randomized checks draw their curves and
coefficients from ``run.seed``.

"""

import dataclasses
import logging
from dataclasses import dataclass

import numpy as np

from ..exception import DgIfeError
from ..models.geometry.common import CoefficientField, EllipseCurve
from ..models.ife_space.common import ife_basis, standard_basis
from ..models.ife_space.space import IfeSpace
from ..models.mesh.classifier import classify
from ..models.mesh.common import ElementKind, build_uniform
from ..models.problem.common import LinearSolution
from ..numerics.sparse import min_generalized_eig
from .assembler import energy_gram
from .core import BaseDgIfeComponent

_logger = logging.getLogger(__name__)

BASIS_SAMPLES = 500
BASIS_TOLERANCE = 1e-10
SYMMETRY_TOLERANCE = 1e-10
PATCH_TOLERANCE = 1e-8
CHECK_MESH_N = 8
MAX_CURVES = 200
# Cuts leaving less than this fraction of the element on one side are skipped
MIN_CUT_FRACTION = 1e-3


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ''


def random_points(element, count, rng):
    """ Points drawn uniformly in a triangle or an axis aligned rectangle """
    vertices = np.asarray(element.vertices, dtype=float)
    if len(vertices) == 3:
        u, v = rng.random(count), rng.random(count)
        flip = u + v > 1.0
        u[flip], v[flip] = 1.0 - u[flip], 1.0 - v[flip]
        return vertices[0] + np.outer(u, vertices[1] - vertices[0]) + np.outer(v, vertices[2] - vertices[0])
    lower, upper = vertices.min(axis=0), vertices.max(axis=0)
    return lower + rng.random((count, 2)) * (upper - lower)


def random_cuts(kind, count, rng, n=CHECK_MESH_N):
    """ Cut elements of random circles on an ``n x n`` mesh, with random coefficients

    :return: list of ``(element, cut, CoefficientField)``
    """
    mesh = build_uniform(n, kind)
    found = []
    for _ in range(MAX_CURVES):
        center = rng.uniform(-0.4, 0.4, size=2)
        radius = rng.uniform(0.25, 0.55)
        curve = EllipseCurve(center=tuple(center), a=radius, b=radius * rng.uniform(0.8, 1.25))
        try:
            classification = classify(mesh, curve, strict=False)
        except DgIfeError:
            continue
        betas = 10.0 ** rng.uniform(0.0, 3.0, size=2)
        beta = CoefficientField(float(betas[0]), float(betas[1]))
        for element, cut in sorted(classification.cuts.items()):
            if min(cut.minus_area, cut.plus_area) < MIN_CUT_FRACTION * mesh.areas[element]:
                continue
            found.append((mesh.element(element), cut, beta))
            if len(found) >= count:
                return found
    return found


class InvariantChecker(BaseDgIfeComponent):
    """ Runs every invariant check on the configured problem """

    _name = 'dgife.invariant.checker'
    _usage = 'invariant.checker'

    def run(self):
        rng = np.random.default_rng(self.config.run.seed)
        results = []
        results.extend(self.check_bases(rng))
        sizes = list(self.config.study.sizes[:2])
        results.append(self.check_symmetry(sizes[0]))
        for n in sizes:
            results.append(self.check_coercivity(n))
        results.append(self.check_patch(sizes[0]))
        for result in results:
            log = _logger.info if result.passed else _logger.error
            log('%-24s %s %s', result.name, 'ok' if result.passed else 'FAILED', result.detail)
        return results

    def _mesh(self, n):
        mesh = build_uniform(n, self.config.element_kind)
        classification = classify(mesh, self.work.curve)
        return mesh, classification, IfeSpace(mesh, classification, self.work.beta)

    def check_bases(self, rng, samples=BASIS_SAMPLES):
        """ Nodal property, partition of unity, flux jump and reduction to the standard basis """
        cuts = random_cuts(self.config.element_kind, samples, rng)
        nodal = unity = flux = reduction = 0.0
        for element, cut, beta in cuts:
            basis = ife_basis(element, cut, beta)
            count = basis.vertex_count
            nodal = max(nodal, np.max(np.abs(basis.values(basis.vertices) - np.eye(count))))
            points = random_points(element, 8, rng)
            unity = max(unity, np.max(np.abs(basis.values(points).sum(axis=-1) - 1.0)))
            middle = 0.5 * (basis.chord[0] + basis.chord[1])
            scale = beta.beta_max * np.max(np.abs(basis.gradients(middle)))
            flux = max(flux, max(abs(basis.flux_jump(i, middle)) for i in range(count)) / scale)
            equal = ife_basis(element, cut, CoefficientField(beta.beta_minus, beta.beta_minus))
            standard = standard_basis(element, beta.beta_minus)
            reduction = max(reduction, np.max(np.abs(equal.values(points) - standard.values(points))))
        detail = '%d cut elements' % len(cuts)
        return [
            CheckResult('basis nodal', nodal <= BASIS_TOLERANCE, '%s, max %.2e' % (detail, nodal)),
            CheckResult('basis unity', unity <= BASIS_TOLERANCE, '%s, max %.2e' % (detail, unity)),
            CheckResult('basis flux jump', flux <= BASIS_TOLERANCE, '%s, max %.2e' % (detail, flux)),
            CheckResult('basis reduction', reduction <= BASIS_TOLERANCE,
                        '%s, max %.2e' % (detail, reduction)),
        ]

    def check_symmetry(self, n):
        if self.dg.epsilon != -1 and self.config.discretization.scheme == 'dg':
            return CheckResult('symmetry N=%d' % n, True, 'skipped, epsilon = %d' % self.dg.epsilon)
        mesh, _, space = self._mesh(n)
        assembler = self.component('system.assembler')
        matrix = assembler.matrix(space, assembler.dof_map(mesh))
        scale = abs(matrix).max()
        asymmetry = abs(matrix - matrix.T).max() / scale if scale else 0.0
        return CheckResult('symmetry N=%d' % n, asymmetry <= SYMMETRY_TOLERANCE,
                           'relative %.2e' % asymmetry)

    def check_coercivity(self, n):
        """ Smallest eigenvalue of the symmetric part against the energy Gram matrix """
        mesh, _, space = self._mesh(n)
        assembler = self.component('system.assembler')
        dof_map = assembler.dof_map(mesh)
        matrix = assembler.matrix(space, dof_map)
        gram = energy_gram(space, dof_map, self.dg, self.work.workers)
        interior = dof_map.interior
        matrix = matrix[interior][:, interior]
        gram = gram[interior][:, interior]
        value, _ = min_generalized_eig(0.5 * (matrix + matrix.T), gram)
        return CheckResult('coercivity N=%d' % n, value > 0.0, 'lambda_min %.4e' % value)

    def check_patch(self, n):
        """ A linear solution with a continuous coefficient is reproduced """
        beta = CoefficientField(self.work.beta.beta_minus, self.work.beta.beta_minus)
        solution = LinearSolution(c0=0.3, cx=1.2, cy=-0.7, beta=beta)
        work = dataclasses.replace(self.work, beta=beta, solution=solution, extra={})
        result = self.component('level.solver', work).run(
            build_uniform(n, self.config.element_kind), 'patch N=%d' % n)
        error = result.row.errors['Linf']
        return CheckResult('patch N=%d' % n, error <= PATCH_TOLERANCE, 'Linf %.2e' % error)
