# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Plain text mesh dump read by the plotting scripts::

    n x y
    e kind level v1 v2 v3 [v4]
    b k1 k2 x0 y0 x1 y1 flags

``k2`` is -1 on boundary edges, ``flags`` is a bit set: 1 boundary edge,
2 interface edge.

"""

import logging

import numpy as np

from ...numerics.utils import format_number, open_writer
from .common import FLAG_BOUNDARY, FLAG_INTERFACE

_logger = logging.getLogger(__name__)


def mesh_rows(mesh, classification=None):
    for x, y in mesh.nodes:
        yield ['n', format_number(x), format_number(y)]
    for index in range(mesh.element_count):
        yield (['e', mesh.kind.value, format_number(int(mesh.cells[index, 0]))]
               + [format_number(int(node)) for node in mesh.elements[index]])
    interface = np.zeros(mesh.edge_count, dtype=bool)
    if classification is not None:
        interface = classification.edge_flags
    for index in range(mesh.edge_count):
        first, second = mesh.edge_elements[index]
        flags = 0
        if mesh.edge_on_boundary[index]:
            flags |= FLAG_BOUNDARY
        if interface[index]:
            flags |= FLAG_INTERFACE
        (x0, y0), (x1, y1) = mesh.edge_points[index]
        yield ['b', format_number(int(first)), format_number(int(second)),
               format_number(x0), format_number(y0), format_number(x1), format_number(y1),
               format_number(flags)]


def dump_mesh(mesh, path, classification=None):
    """ Write the mesh dump of ``mesh`` to ``path`` """
    with open(path, 'wb') as handle:
        writer = open_writer(handle, delimiter=' ')
        for row in mesh_rows(mesh, classification):
            writer.writerow(row)
    _logger.info('Mesh dump written to %s (%d elements)', path, mesh.element_count)
    return path
