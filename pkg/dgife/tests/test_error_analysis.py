# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import math

import numpy as np
import pytest

from dgife.models.config.common import DgConfig
from dgife.models.error_analysis.common import (NORMS, ErrorReport, ErrorRow, compute_norms,
                                                convergence_rates, fit_slope)
from dgife.models.error_analysis.exporter import error_field, export_error_field, raster
from dgife.models.ife_space.dofs import discontinuous_dofs, interpolate
from dgife.models.ife_space.space import IfeSpace
from dgife.models.mesh.classifier import classify
from dgife.models.mesh.common import DEFAULT_DOMAIN, ElementKind, build_uniform
from dgife.models.problem.common import LinearSolution


def _row(n, value, dof=None):
    return ErrorRow(n=n, dof=dof or n * n, errors={norm: value for norm in NORMS})


def _interpolant_row(n, ellipse, solution, kind=ElementKind.TRIANGLE):
    mesh = build_uniform(n, kind)
    space = IfeSpace(mesh, classify(mesh, ellipse), solution.beta)
    dof_map = discontinuous_dofs(mesh)
    nodal = dof_map.expand(interpolate(solution, dof_map))
    return compute_norms(nodal, solution, space, DgConfig(), n=n)


def test_uniform_rates():
    report = convergence_rates(ErrorReport(rows=[_row(10, 1.0), _row(20, 0.25), _row(40, 0.25)]))
    assert report.rows[0].rates == {}
    assert report.rows[1].rate('L2') == pytest.approx(2.0)
    assert report.rows[2].rate('H1semi') == 0.0
    assert math.isnan(report.rows[0].rate('L2'))


def test_rates_leave_the_report_untouched():
    report = ErrorReport(rows=[_row(10, 1.0), _row(20, 0.0)])
    rated = convergence_rates(report)
    assert report.rows[1].rates == {}
    assert math.isnan(rated.rows[1].rate('Linf'))


def test_rates_against_dof():
    report = ErrorReport(rows=[_row(None, 1.0, dof=100), _row(None, 0.5, dof=400)], against_dof=True)
    assert convergence_rates(report).rows[1].rate('Energy') == pytest.approx(-0.5)


def test_rates_from_reference_errors():
    errors = [3.7991e-2, 9.3605e-3]
    report = ErrorReport(rows=[_row(10, errors[0]), _row(20, errors[1])])
    assert convergence_rates(report).rows[1].rate('L2') == pytest.approx(2.02, abs=0.005)


def test_fit_slope():
    dofs = np.array([100.0, 400.0, 1600.0, 6400.0])
    errors = 3.0 * dofs ** -0.5
    assert fit_slope(dofs, errors) == pytest.approx(-0.5)
    errors[0] = 1.0
    assert fit_slope(dofs, errors, last=3) == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        fit_slope(dofs[:1], errors[:1])


def test_report_columns():
    report = ErrorReport()
    report.add(_row(10, 1.0))
    report.add(_row(20, 0.5))
    assert len(report) == 2
    np.testing.assert_array_equal(report.column('L2'), [1.0, 0.5])
    np.testing.assert_array_equal(report.dofs, [100, 400])


def test_linear_interpolant_is_exact(ellipse):
    solution = LinearSolution(c0=2.0, cx=0.5, cy=-1.5)
    mesh = build_uniform(10, ElementKind.RECTANGLE)
    space = IfeSpace(mesh, classify(mesh, ellipse), solution.beta)
    dof_map = discontinuous_dofs(mesh)
    nodal = dof_map.expand(interpolate(solution, dof_map))
    row = compute_norms(nodal, solution, space, DgConfig(), n=10)
    assert row.dof == 400
    assert row.elements == 100
    for norm in NORMS:
        assert row.errors[norm] == pytest.approx(0.0, abs=1e-10)
    assert row.indicators.shape == (100,)


def test_interpolation_rates(ellipse, solution):
    report = ErrorReport(rows=[_interpolant_row(n, ellipse, solution) for n in (20, 40)])
    rated = convergence_rates(report)
    assert rated.rows[1].rate('L2') == pytest.approx(2.0, abs=0.25)
    assert rated.rows[1].rate('H1semi') == pytest.approx(1.0, abs=0.25)
    coarse = rated.rows[0]
    assert coarse.errors['Linf'] > 0.0
    assert coarse.errors['H1semi'] == pytest.approx(
        math.sqrt(np.sum(coarse.indicators ** 2)), rel=1e-12)


@pytest.mark.slow
def test_energy_interpolation_slope(ellipse, solution):
    sizes = (10, 20, 40, 80)
    rows = [_interpolant_row(n, ellipse, solution) for n in sizes]
    energy = [row.errors['Energy'] for row in rows]
    assert fit_slope(sizes, energy, last=3) == pytest.approx(-1.0, abs=0.15)
    assert all(fine < coarse for coarse, fine in zip(energy, energy[1:]))


def test_error_field(tmp_path, ellipse, solution):
    mesh = build_uniform(10, ElementKind.RECTANGLE)
    space = IfeSpace(mesh, classify(mesh, ellipse), solution.beta)
    dof_map = discontinuous_dofs(mesh)
    nodal = dof_map.expand(interpolate(solution, dof_map))
    points = raster(DEFAULT_DOMAIN, 4)
    np.testing.assert_allclose(points[0], [-0.75, -0.75])
    assert points.shape == (16, 2)
    grid, errors = error_field(nodal, solution, space, 8)
    assert grid.shape == (64, 2)
    assert np.all(errors >= 0.0)
    path = str(tmp_path / 'field.txt')
    _, written = export_error_field(nodal, solution, space, path, 8)
    np.testing.assert_array_equal(written, errors)
    lines = open(path, 'rb').read().decode('utf-8').splitlines()
    assert len(lines) == 64
    assert len(lines[0].split(' ')) == 3
