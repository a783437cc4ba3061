# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

"""

Command line entry point::

    python -m dgife converge --config example1.ini --out out/
    python -m dgife adapt --config example3.ini
    python -m dgife dump-mesh --n 10 --levels 2
    python -m dgife dump-field --n 40
    python -m dgife check

Exit code 0 when every stage succeeded, 1 on a solver error or a failed
check, 2 on usage errors.

"""

import argparse
import ast
import logging
import os

from .exception import DgIfeError
from .models.config.common import METHODS, TIERS, RunConfig, validate, with_overrides
from .models.config.importer import parse_config
from .wizards.wizard_adapt import WizardAdapt
from .wizards.wizard_check import WizardCheck
from .wizards.wizard_converge import WizardConverge
from .wizards.wizard_dump_field import WizardDumpField
from .wizards.wizard_dump_mesh import WizardDumpMesh

_logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def _version():
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), '__manifest__.py')
    with open(path) as handle:
        return ast.literal_eval(handle.read())['version']


def build_parser():
    parser = argparse.ArgumentParser(prog='dgife', description='DG-IFE interface problem solver')
    parser.add_argument('--version', action='version', version='%(prog)s ' + _version())
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='PATH', help='INI run configuration')
    common.add_argument('--out', metavar='DIR', help='output directory')
    common.add_argument('--quad-order', metavar='K', type=int, help='Gauss order on cells and edges')
    common.add_argument('--solver', choices=METHODS, help='linear solver')
    common.add_argument('--tier', choices=TIERS, help='mesh size limit')
    common.add_argument('-v', '--verbose', action='store_true', help='debug logging')

    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True
    commands.add_parser('converge', parents=[common], help='uniform convergence study')
    commands.add_parser('adapt', parents=[common], help='adaptive refinement study')
    dump_mesh = commands.add_parser('dump-mesh', parents=[common], help='write a classified mesh')
    dump_mesh.add_argument('--n', type=int, help='cells per axis, study.initial_n by default')
    dump_mesh.add_argument('--levels', type=int, default=0, help='interface refinements')
    dump_field = commands.add_parser('dump-field', parents=[common], help='write the error field')
    dump_field.add_argument('--n', type=int, help='cells per axis, first study size by default')
    commands.add_parser('check', parents=[common], help='run the invariant suite')
    return parser


def load_config(args):
    config = parse_config(args.config) if args.config else validate(RunConfig())
    return with_overrides(config, quad_order=args.quad_order, solver=args.solver,
                          tier=args.tier, out=args.out)


def run_command(args, config):
    """ Run one subcommand, returns the exit code """
    if args.command == 'converge':
        WizardConverge(config).run()
    elif args.command == 'adapt':
        WizardAdapt(config).run()
    elif args.command == 'dump-mesh':
        WizardDumpMesh(config, n=args.n, levels=args.levels).run()
    elif args.command == 'dump-field':
        WizardDumpField(config, n=args.n).run()
    elif args.command == 'check':
        results = WizardCheck(config).run()
        failed = [result.name for result in results if not result.passed]
        if failed:
            _logger.error('%d checks failed: %s', len(failed), ', '.join(failed))
            return 1
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT)
    try:
        config = load_config(args)
        return run_command(args, config)
    except DgIfeError:
        _logger.exception('%s failed', args.command)
        return 1
