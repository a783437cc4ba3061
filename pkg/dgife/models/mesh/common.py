# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Cartesian meshes of rectangles or right triangles with local refinement.

Every element is addressed by ``(level, i, j, half)``: the cell ``(i, j)``
of the ``N * 2**level`` grid, and for triangles the half below
(``half = 0``) or above (``half = 1``) the lower-left to upper-right
diagonal. Vertex coordinates are kept as integers on the grid of the
finest level present, which makes node deduplication and the matching
of coarse and fine faces exact.

Edges are the maximal segments shared by two elements (or by one element
and the domain boundary). A coarse face next to refined elements is
split into one sub-edge per neighbor.

"""

import enum
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

_logger = logging.getLogger(__name__)

LOWER = 0
UPPER = 1

VERTICAL = 0
HORIZONTAL = 1
DIAGONAL = 2

# Outward normal of the element lying on the orientation 0 side of a line
LINE_NORMALS = np.array([[1.0, 0.0],
                         [0.0, 1.0],
                         [-np.sqrt(0.5), np.sqrt(0.5)]])

# Boundary flag bits used in dumps
FLAG_BOUNDARY = 1
FLAG_INTERFACE = 2


class ElementKind(str, enum.Enum):
    TRIANGLE = 'triangle'
    RECTANGLE = 'rectangle'

    @property
    def vertex_count(self):
        return 3 if self is ElementKind.TRIANGLE else 4


# Integer vertex offsets inside the cell, counter-clockwise
VERTEX_OFFSETS = {
    (ElementKind.RECTANGLE, LOWER): ((0, 0), (1, 0), (1, 1), (0, 1)),
    (ElementKind.TRIANGLE, LOWER): ((0, 0), (1, 0), (1, 1)),
    (ElementKind.TRIANGLE, UPPER): ((0, 0), (1, 1), (0, 1)),
}

# (start vertex, end vertex, line family, orientation) of every element side
SIDE_TABLES = {
    (ElementKind.RECTANGLE, LOWER): ((0, 1, HORIZONTAL, 1), (1, 2, VERTICAL, 0),
                                     (2, 3, HORIZONTAL, 0), (3, 0, VERTICAL, 1)),
    (ElementKind.TRIANGLE, LOWER): ((0, 1, HORIZONTAL, 1), (1, 2, VERTICAL, 0),
                                    (2, 0, DIAGONAL, 0)),
    (ElementKind.TRIANGLE, UPPER): ((0, 1, DIAGONAL, 1), (1, 2, HORIZONTAL, 0),
                                    (2, 0, VERTICAL, 1)),
}


@dataclass(frozen=True)
class Domain:
    x_min: float = -1.0
    x_max: float = 1.0
    y_min: float = -1.0
    y_max: float = 1.0

    def __post_init__(self):
        if self.x_max <= self.x_min or self.y_max <= self.y_min:
            raise ValueError('Empty domain %s' % (self,))

    @property
    def width(self):
        return self.x_max - self.x_min

    @property
    def height(self):
        return self.y_max - self.y_min

    @property
    def area(self):
        return self.width * self.height

    @property
    def diameter(self):
        return float(np.hypot(self.width, self.height))


DEFAULT_DOMAIN = Domain()


@dataclass(frozen=True)
class Element:
    index: int
    kind: ElementKind
    level: int
    vertices: np.ndarray
    node_ids: tuple

    @property
    def vertex_count(self):
        return len(self.node_ids)

    @property
    def area(self):
        x = self.vertices[:, 0]
        y = self.vertices[:, 1]
        return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))

    @property
    def diameter(self):
        delta = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.max(np.linalg.norm(delta, axis=-1)))

    @property
    def origin(self):
        return self.vertices.min(axis=0)

    @property
    def size(self):
        return self.vertices.max(axis=0) - self.vertices.min(axis=0)


@dataclass(frozen=True)
class Edge:
    index: int
    p0: np.ndarray
    p1: np.ndarray
    first: int
    second: Optional[int]
    normal: np.ndarray
    on_boundary: bool
    interface: bool = False

    @property
    def length(self):
        return float(np.linalg.norm(self.p1 - self.p0))

    @property
    def kind(self):
        return 'boundary' if self.on_boundary else 'interior'


class CartesianMesh(object):
    """ Immutable Cartesian mesh, possibly with hanging nodes

    :param domain: the rectangle covered by the mesh
    :param kind: :class:`ElementKind` of every element
    :param base_n: cells per axis at level 0
    :param cells: integer array (E, 4) of ``(level, i, j, half)``
    :param parents: for refined meshes, the element of the previous mesh
                    each element comes from
    """

    def __init__(self, domain, kind, base_n, cells, parents=None):
        self.domain = domain
        self.kind = ElementKind(kind)
        self.base_n = int(base_n)
        self.cells = np.ascontiguousarray(cells, dtype=np.int64)
        self.cells.setflags(write=False)
        self.parents = None if parents is None else np.asarray(parents, dtype=np.int64)
        self.max_level = int(self.cells[:, 0].max())
        self.resolution = self.base_n * 2 ** self.max_level
        self._cell_index = None
        self._build_nodes()
        self._build_edges()
        _logger.debug('Mesh %s: %d elements, %d nodes, %d edges, max level %d',
                      self.kind.value, self.element_count, self.node_count,
                      self.edge_count, self.max_level)

    # -- sizes --------------------------------------------------------------

    @property
    def element_count(self):
        return len(self.cells)

    @property
    def node_count(self):
        return len(self.nodes)

    @property
    def edge_count(self):
        return len(self.edge_lengths)

    @property
    def vertex_count(self):
        return self.kind.vertex_count

    @property
    def levels(self):
        return self.cells[:, 0]

    @property
    def h(self):
        return float(self.diameters.max())

    @property
    def interior_edges(self):
        return np.flatnonzero(~self.edge_on_boundary)

    @property
    def boundary_edges(self):
        return np.flatnonzero(self.edge_on_boundary)

    @property
    def is_conforming(self):
        return bool(np.all(self.cells[:, 0] == self.cells[0, 0]))

    def __repr__(self):
        return '<CartesianMesh %s N=%d elements=%d levels=%d>' % (
            self.kind.value, self.base_n, self.element_count, self.max_level + 1)

    # -- construction -------------------------------------------------------

    def _to_physical(self, keys):
        keys = np.asarray(keys, dtype=float)
        x = self.domain.x_min + keys[..., 0] * (self.domain.width / self.resolution)
        y = self.domain.y_min + keys[..., 1] * (self.domain.height / self.resolution)
        return np.stack([x, y], axis=-1)

    def _vertex_keys(self):
        d = self.vertex_count
        keys = np.empty((self.element_count, d, 2), dtype=np.int64)
        level, i, j, half = self.cells.T
        factor = np.left_shift(np.int64(1), self.max_level - level)
        halves = (LOWER,) if self.kind is ElementKind.RECTANGLE else (LOWER, UPPER)
        for which in halves:
            mask = half == which
            for v, (di, dj) in enumerate(VERTEX_OFFSETS[(self.kind, which)]):
                keys[mask, v, 0] = (i[mask] + di) * factor[mask]
                keys[mask, v, 1] = (j[mask] + dj) * factor[mask]
        return keys

    def _build_nodes(self):
        keys = self._vertex_keys()
        self.vertex_keys = keys
        unique, inverse = np.unique(keys.reshape(-1, 2), axis=0, return_inverse=True)
        self.node_keys = unique
        self.nodes = self._to_physical(unique)
        self.elements = inverse.reshape(-1).reshape(self.element_count, self.vertex_count)
        self.element_vertices = self.nodes[self.elements]
        vertices = self.element_vertices
        x = vertices[..., 0]
        y = vertices[..., 1]
        self.areas = 0.5 * np.abs(np.sum(x * np.roll(y, -1, axis=1) - np.roll(x, -1, axis=1) * y, axis=1))
        self.origins = vertices.min(axis=1)
        self.sizes = vertices.max(axis=1) - self.origins
        self.diameters = np.hypot(self.sizes[:, 0], self.sizes[:, 1])
        res = self.resolution
        self.node_on_boundary = ((unique[:, 0] == 0) | (unique[:, 0] == res)
                                 | (unique[:, 1] == 0) | (unique[:, 1] == res))

    def _side_records(self):
        """ One record per element side: family, line key, lo, hi, element, orientation """
        keys = self.vertex_keys
        half = self.cells[:, 3]
        halves = (LOWER,) if self.kind is ElementKind.RECTANGLE else (LOWER, UPPER)
        records = []
        for which in halves:
            elements = np.flatnonzero(half == which)
            for start, end, family, orientation in SIDE_TABLES[(self.kind, which)]:
                a = keys[elements, start]
                b = keys[elements, end]
                if family == VERTICAL:
                    line = a[:, 0]
                    lo, hi = np.minimum(a[:, 1], b[:, 1]), np.maximum(a[:, 1], b[:, 1])
                elif family == HORIZONTAL:
                    line = a[:, 1]
                    lo, hi = np.minimum(a[:, 0], b[:, 0]), np.maximum(a[:, 0], b[:, 0])
                else:
                    line = a[:, 0] - a[:, 1]
                    lo, hi = np.minimum(a[:, 0], b[:, 0]), np.maximum(a[:, 0], b[:, 0])
                records.append(np.column_stack([
                    np.full(len(elements), family), line, lo, hi, elements,
                    np.full(len(elements), orientation)]))
        return np.concatenate(records).astype(np.int64)

    def _build_edges(self):
        records = self._side_records()
        family, line_key, lo, hi, owner, orientation = records.T
        lines, line_ids = np.unique(np.column_stack([family, line_key]), axis=0, return_inverse=True)
        line_ids = line_ids.reshape(-1)
        stride = np.int64(self.resolution + 1)
        breakpoints = np.unique(np.concatenate([line_ids * stride + lo, line_ids * stride + hi]))
        same_line = (breakpoints[:-1] // stride) == (breakpoints[1:] // stride)
        cand_line = breakpoints[:-1][same_line] // stride
        cand_lo = breakpoints[:-1][same_line] % stride
        cand_hi = breakpoints[1:][same_line] % stride

        owners = []
        for side in (0, 1):
            mask = orientation == side
            keys = line_ids[mask] * stride + lo[mask]
            order = np.argsort(keys, kind='stable')
            keys = keys[order]
            rec_line = line_ids[mask][order]
            rec_hi = hi[mask][order]
            rec_owner = owner[mask][order]
            pos = np.searchsorted(keys, cand_line * stride + cand_lo, side='right') - 1
            safe = np.clip(pos, 0, max(len(keys) - 1, 0))
            found = (pos >= 0) & (len(keys) > 0)
            if len(keys):
                found &= (rec_line[safe] == cand_line) & (rec_hi[safe] >= cand_hi)
                owners.append(np.where(found, rec_owner[safe], -1))
            else:
                owners.append(np.full(len(cand_line), -1, dtype=np.int64))
        owner0, owner1 = owners

        cand_family = lines[cand_line, 0]
        cand_key = lines[cand_line, 1]
        res = self.resolution
        boundary_line = (cand_family != DIAGONAL) & ((cand_key == 0) | (cand_key == res))
        covered = (owner0 >= 0) | (owner1 >= 0)
        keep = covered
        single = (owner0 < 0) | (owner1 < 0)
        missing = keep & single & ~boundary_line
        if np.any(missing):
            _logger.warning('%d interior sub-edges have a single owner', int(missing.sum()))

        owner0 = owner0[keep]
        owner1 = owner1[keep]
        fam = cand_family[keep]
        key = cand_key[keep]
        e_lo = cand_lo[keep]
        e_hi = cand_hi[keep]

        both = (owner0 >= 0) & (owner1 >= 0)
        first = np.where(both, np.minimum(owner0, owner1), np.maximum(owner0, owner1))
        second = np.where(both, np.maximum(owner0, owner1), -1)
        first_is_side0 = first == owner0
        normals = LINE_NORMALS[fam] * np.where(first_is_side0, 1.0, -1.0)[:, None]

        start = np.empty((len(fam), 2), dtype=np.int64)
        end = np.empty((len(fam), 2), dtype=np.int64)
        vertical = fam == VERTICAL
        horizontal = fam == HORIZONTAL
        diagonal = fam == DIAGONAL
        start[vertical] = np.column_stack([key[vertical], e_lo[vertical]])
        end[vertical] = np.column_stack([key[vertical], e_hi[vertical]])
        start[horizontal] = np.column_stack([e_lo[horizontal], key[horizontal]])
        end[horizontal] = np.column_stack([e_hi[horizontal], key[horizontal]])
        start[diagonal] = np.column_stack([e_lo[diagonal], e_lo[diagonal] - key[diagonal]])
        end[diagonal] = np.column_stack([e_hi[diagonal], e_hi[diagonal] - key[diagonal]])

        self.edge_points = np.stack([self._to_physical(start), self._to_physical(end)], axis=1)
        self.edge_elements = np.column_stack([first, second])
        self.edge_normals = normals
        self.edge_lengths = np.linalg.norm(self.edge_points[:, 1] - self.edge_points[:, 0], axis=-1)
        self.edge_on_boundary = boundary_line[keep] & (second < 0)

    # -- accessors ----------------------------------------------------------

    def element(self, index):
        level, _, _, _ = self.cells[index]
        return Element(index=int(index), kind=self.kind, level=int(level),
                       vertices=self.element_vertices[index].copy(),
                       node_ids=tuple(int(n) for n in self.elements[index]))

    def edge(self, index, interface=False):
        first, second = self.edge_elements[index]
        return Edge(index=int(index),
                    p0=self.edge_points[index, 0].copy(),
                    p1=self.edge_points[index, 1].copy(),
                    first=int(first),
                    second=None if second < 0 else int(second),
                    normal=self.edge_normals[index].copy(),
                    on_boundary=bool(self.edge_on_boundary[index]),
                    interface=bool(interface))

    def shape_regularity(self):
        """ Largest ratio between an owner diameter and the length of an interior edge """
        owners = self.edge_elements[self.interior_edges]
        if not len(owners):
            return 0.0
        diameters = np.maximum(self.diameters[owners[:, 0]], self.diameters[owners[:, 1]])
        return float(np.max(diameters / self.edge_lengths[self.interior_edges]))

    def _lookup(self):
        if self._cell_index is None:
            self._cell_index = {tuple(int(v) for v in cell): k for k, cell in enumerate(self.cells)}
        return self._cell_index

    def locate(self, points):
        """ Element containing every point, -1 for points outside the domain

        Points on a face shared by two elements get either of them.
        """
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        result = np.full(len(points), -1, dtype=np.int64)
        dom = self.domain
        inside = ((points[:, 0] >= dom.x_min) & (points[:, 0] <= dom.x_max)
                  & (points[:, 1] >= dom.y_min) & (points[:, 1] <= dom.y_max))
        pending = np.flatnonzero(inside)
        lookup = self._lookup()
        triangles = self.kind is ElementKind.TRIANGLE
        for level in np.unique(self.cells[:, 0]):
            if not pending.size:
                break
            cells_per_axis = self.base_n * 2 ** int(level)
            sx = (points[pending, 0] - dom.x_min) / dom.width * cells_per_axis
            sy = (points[pending, 1] - dom.y_min) / dom.height * cells_per_axis
            i = np.clip(np.floor(sx), 0, cells_per_axis - 1).astype(np.int64)
            j = np.clip(np.floor(sy), 0, cells_per_axis - 1).astype(np.int64)
            if triangles:
                half = np.where(sy - j > sx - i, UPPER, LOWER)
            else:
                half = np.zeros_like(i)
            found = np.array([lookup.get((int(level), a, b, c), -1)
                              for a, b, c in zip(i.tolist(), j.tolist(), half.tolist())],
                             dtype=np.int64)
            hit = found >= 0
            result[pending[hit]] = found[hit]
            pending = pending[~hit]
        return result


def build_uniform(n, kind, domain=DEFAULT_DOMAIN):
    """ ``n`` by ``n`` squares, split along the same diagonal for triangles

    :param n: cells per axis, at least 1
    :param kind: :class:`ElementKind` or its value
    """
    if n < 1:
        raise ValueError('Mesh size must be at least 1, got %s' % n)
    kind = ElementKind(kind)
    j, i = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
    i = i.ravel()
    j = j.ravel()
    if kind is ElementKind.RECTANGLE:
        cells = np.column_stack([np.zeros_like(i), i, j, np.zeros_like(i)])
    else:
        lower = np.column_stack([np.zeros_like(i), i, j, np.full_like(i, LOWER)])
        upper = np.column_stack([np.zeros_like(i), i, j, np.full_like(i, UPPER)])
        cells = np.stack([lower, upper], axis=1).reshape(-1, 4)
    return CartesianMesh(domain, kind, n, cells)
