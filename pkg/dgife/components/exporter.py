# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Exporters of a run.

* the error table as CSV, one row per mesh, rates empty on the first row
* the same table aligned for the terminal
* mesh dumps, point-wise error fields and coordinate matrix dumps

Everything goes through ``unicodecsv`` on binary files, so identical
runs give byte-identical files.

"""

import logging

import numpy as np
import scipy.sparse as sp

from ..models.error_analysis.common import NORMS
from ..models.error_analysis.exporter import export_error_field
from ..models.mesh.exporter import dump_mesh
from ..numerics.utils import format_number, open_writer
from .core import BaseDgIfeComponent

_logger = logging.getLogger(__name__)

UNIFORM_COLUMNS = ['N', 'DoF']
ADAPTIVE_COLUMNS = ['Iteration', 'Elements', 'DoF']


def report_header(report):
    columns = list(ADAPTIVE_COLUMNS if report.against_dof else UNIFORM_COLUMNS)
    for norm in NORMS:
        columns.extend([norm, '%s_rate' % norm])
    return columns


def report_rows(report):
    for index, row in enumerate(report.rows):
        if report.against_dof:
            values = [format_number(index), format_number(row.elements), format_number(row.dof)]
        else:
            values = [format_number(row.n), format_number(row.dof)]
        for norm in NORMS:
            values.append(format_number(row.errors[norm]))
            values.append(format_number(row.rates.get(norm)))
        yield values


def write_report_csv(report, path):
    with open(path, 'wb') as handle:
        writer = open_writer(handle)
        writer.writerow(report_header(report))
        for values in report_rows(report):
            writer.writerow(values)
    _logger.info('Error table written to %s (%d rows)', path, len(report))
    return path


def format_table(report):
    """ Aligned text version of the error table """
    header = report_header(report)
    lines = []
    for row, values in zip(report.rows, report_rows(report)):
        cells = values[:len(header) - 2 * len(NORMS)]
        for norm in NORMS:
            cells.append('%.4E' % row.errors[norm])
            rate = row.rates.get(norm)
            cells.append('' if rate is None or rate != rate else '%.4f' % rate)
        lines.append(cells)
    widths = [max([len(header[i])] + [len(cells[i]) for cells in lines]) for i in range(len(header))]
    text = ['  '.join(title.rjust(width) for title, width in zip(header, widths))]
    for cells in lines:
        text.append('  '.join(cell.rjust(width) for cell, width in zip(cells, widths)))
    return '\n'.join(text)


def write_matrix(matrix, path):
    """ ``i j value`` lines, 0-based, in row-major order """
    coo = sp.coo_matrix(matrix)
    order = np.lexsort((coo.col, coo.row))
    with open(path, 'wb') as handle:
        writer = open_writer(handle, delimiter=' ')
        for i, j, value in zip(coo.row[order], coo.col[order], coo.data[order]):
            writer.writerow([format_number(int(i)), format_number(int(j)), format_number(value)])
    _logger.info('Matrix dump written to %s (%d non-zeros)', path, coo.nnz)
    return path


class RunExporter(BaseDgIfeComponent):
    """ Writes the files of a run under the output directory """

    _name = 'dgife.run.exporter'
    _usage = 'run.exporter'

    def run(self, report, name=None):
        path = self.work.output_path(name or self.config.output.csv_name)
        write_report_csv(report, path)
        for line in format_table(report).splitlines():
            _logger.info(line)
        return path

    def level_dumps(self, result, label):
        """ Optional per mesh dumps selected in the ``output`` section """
        output = self.config.output
        paths = []
        if output.dump_meshes:
            paths.append(self.mesh(result.mesh, label, result.classification))
        if output.dump_fields:
            paths.append(self.field(result, label))
        if output.dump_matrix:
            paths.append(write_matrix(result.assembled.matrix,
                                      self.work.output_path('matrix_%s.txt' % label)))
        return paths

    def mesh(self, mesh, label, classification=None):
        return dump_mesh(mesh, self.work.output_path('mesh_%s.txt' % label), classification)

    def field(self, result, label):
        path = self.work.output_path('field_%s.txt' % label)
        export_error_field(result.nodal, self.work.solution, result.space, path,
                           resolution=self.config.output.field_resolution)
        return path
