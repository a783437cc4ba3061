# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import logging

import numpy as np

from ...numerics.utils import format_number, open_writer

_logger = logging.getLogger(__name__)

DEFAULT_RESOLUTION = 256


def raster(domain, resolution):
    """ Cell centers of a ``resolution`` by ``resolution`` raster of the domain """
    xs = domain.x_min + (np.arange(resolution) + 0.5) * (domain.width / resolution)
    ys = domain.y_min + (np.arange(resolution) + 0.5) * (domain.height / resolution)
    grid_x, grid_y = np.meshgrid(xs, ys, indexing='xy')
    return np.column_stack([grid_x.ravel(), grid_y.ravel()])


def error_field(nodal, solution, space, resolution=DEFAULT_RESOLUTION):
    """ Point-wise error ``|u_h - u|`` on the raster

    :return: ``(points (R*R, 2), errors (R*R,))``
    """
    points = raster(space.mesh.domain, resolution)
    elements = space.mesh.locate(points)
    if np.any(elements < 0):
        raise ValueError('Raster points outside the mesh')
    uh, _ = space.combine(elements, points, nodal)
    exact = solution.value(points[:, 0], points[:, 1])
    return points, np.abs(uh - exact)


def export_error_field(nodal, solution, space, path, resolution=DEFAULT_RESOLUTION):
    """ Write the ``x y err`` rows of the error field to ``path`` """
    points, errors = error_field(nodal, solution, space, resolution)
    with open(path, 'wb') as handle:
        writer = open_writer(handle, delimiter=' ')
        for (x, y), err in zip(points, errors):
            writer.writerow([format_number(x), format_number(y), format_number(err)])
    _logger.info('Error field written to %s (%d points, max %.4e)', path, len(errors), errors.max())
    return points, errors
