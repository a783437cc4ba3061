# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import numpy as np
import scipy.sparse as sp

from dgife.components.exporter import (format_table, report_header, report_rows, write_matrix,
                                       write_report_csv)
from dgife.models.error_analysis.common import NORMS, ErrorReport, ErrorRow, convergence_rates


def _report(against_dof=False):
    rows = [ErrorRow(n=10, dof=400, errors={norm: 0.1 for norm in NORMS}, elements=100),
            ErrorRow(n=20, dof=1600, errors={norm: 0.025 for norm in NORMS}, elements=178)]
    return convergence_rates(ErrorReport(rows=rows, against_dof=against_dof))


def test_headers():
    assert report_header(_report()) == [
        'N', 'DoF', 'Linf', 'Linf_rate', 'L2', 'L2_rate', 'H1semi', 'H1semi_rate',
        'Energy', 'Energy_rate']
    assert report_header(_report(True))[:4] == ['Iteration', 'Elements', 'DoF', 'Linf']


def test_rows():
    first, second = list(report_rows(_report()))
    assert first == ['10', '400', '0.1', '', '0.1', '', '0.1', '', '0.1', '']
    assert second[:4] == ['20', '1600', '0.025', '2']
    adaptive = list(report_rows(_report(True)))
    assert adaptive[1][:3] == ['1', '178', '1600']
    assert adaptive[1][4] == '-1'


def test_csv_is_reproducible(tmp_path):
    first = write_report_csv(_report(), str(tmp_path / 'a.csv'))
    second = write_report_csv(_report(), str(tmp_path / 'b.csv'))
    content = open(first, 'rb').read()
    assert content == open(second, 'rb').read()
    assert content.decode('utf-8').splitlines()[1] == '10,400,0.1,,0.1,,0.1,,0.1,'


def test_table():
    lines = format_table(_report()).splitlines()
    assert len(lines) == 3
    assert lines[0].split() == report_header(_report())
    assert '1.0000E-01' in lines[1]
    assert lines[2].split()[3] == '2.0000'


def test_matrix_dump(tmp_path):
    matrix = sp.csr_matrix(np.array([[0.0, 2.5], [-1.0, 0.0]]))
    path = write_matrix(matrix, str(tmp_path / 'matrix.txt'))
    assert open(path, 'rb').read().decode('utf-8') == '0 1 2.5\n1 0 -1\n'
