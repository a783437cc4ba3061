# -*- coding: utf-8 -*-
##############################################################################
#
#    DG-IFE, interior penalty immersed finite element solver
#    Copyright (C) 2024 Halltic eSolutions S.L. (http://www.halltic.com)
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU Affero General Public License as
#    published by the Free Software Foundation, either version 3 of the
#    License, or (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU Affero General Public License for more details.
#
#    You should have received a copy of the GNU Affero General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.
#
##############################################################################

{
    'name': 'DG-IFE',
    'version': '0.1.0',
    'author': 'Halltic eSolutions S.L.',
    'license': 'AGPL-3',
    'category': 'Numerics',
    'summary': 'Interior penalty DG over immersed finite elements for 2D interface problems',
    'description': """
Solver for -div(beta grad u) = f with a coefficient jumping across a curve
that the Cartesian mesh does not fit. Uniform convergence tables, adaptive
interface or bulk refinement with hanging nodes, mesh and error dumps.
""",
    'external_dependencies': {
        'python': ['numpy', 'scipy', 'unicodecsv'],
    },
    'commands': ['converge', 'adapt', 'dump-mesh', 'dump-field', 'check'],
    'installable': True,
}
