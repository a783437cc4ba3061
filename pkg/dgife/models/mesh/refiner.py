# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import logging

import numpy as np

from .common import LOWER, UPPER, CartesianMesh, ElementKind

_logger = logging.getLogger(__name__)

# Children as (di, dj, half) on the next level, relative to (2i, 2j)
CHILDREN = {
    (ElementKind.RECTANGLE, LOWER): ((0, 0, LOWER), (1, 0, LOWER), (0, 1, LOWER), (1, 1, LOWER)),
    (ElementKind.TRIANGLE, LOWER): ((0, 0, LOWER), (1, 0, LOWER), (1, 0, UPPER), (1, 1, LOWER)),
    (ElementKind.TRIANGLE, UPPER): ((0, 0, UPPER), (0, 1, LOWER), (0, 1, UPPER), (1, 1, UPPER)),
}


def _children(cell, kind):
    level, i, j, half = (int(v) for v in cell)
    return [(level + 1, 2 * i + di, 2 * j + dj, child_half)
            for di, dj, child_half in CHILDREN[(kind, half)]]


def refine(mesh, marked):
    """ Split every marked element in four congruent children

    Children take the place of their parent in the element order, the
    other elements keep their relative order. ``parents`` of the new mesh
    maps every element to the one it comes from.

    :param mesh: the :class:`CartesianMesh` to refine
    :param marked: iterable of element ids
    """
    marked = np.unique(np.asarray(list(marked), dtype=np.int64))
    if not marked.size:
        raise ValueError('Nothing to refine')
    if marked[0] < 0 or marked[-1] >= mesh.element_count:
        raise IndexError('Marked element out of range')
    flags = np.zeros(mesh.element_count, dtype=bool)
    flags[marked] = True
    cells = []
    parents = []
    for index, cell in enumerate(mesh.cells):
        if flags[index]:
            children = _children(cell, mesh.kind)
            cells.extend(children)
            parents.extend([index] * len(children))
        else:
            cells.append(tuple(int(v) for v in cell))
            parents.append(index)
    _logger.debug('Refined %d of %d elements', marked.size, mesh.element_count)
    return CartesianMesh(mesh.domain, mesh.kind, mesh.base_n, np.array(cells, dtype=np.int64),
                         parents=parents)
