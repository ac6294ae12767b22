"""
demkit command line.

    manage.py crystal    --type A2 --weight 1,1 [--out g.json] [--format json|dot]
    manage.py crystal    --import g.json --validate
    manage.py demazure   --type A2 --weight 1,1 --w s1*s2
    manage.py tensor     --type A2 --lambda 1,0 --mu 1,0
    manage.py analyze    --type A2 --lambda 0,1 --w s2 --mu 1,0 --u s1
    manage.py sweep      --type A2 --bound 2 [--jobs 4] [--out sweep.tsv]
    manage.py char       --type A2 --weight 1,1 --w s1*s2 [--all-words]
    manage.py experiment [--remove both|first|second] [--skip-removal]

Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
3 verdicts that must agree disagreed.
"""

import argparse
import logging
import logging.config
import sys

from demkit import commands, settings
from demkit.commands import EXIT_FALSIFIED, EXIT_INPUT
from demkit.exceptions import (
    BudgetExceeded,
    CartanMismatch,
    HypothesisViolation,
    InvalidInput,
    TheoremFalsified,
)

logger = logging.getLogger(__name__)

# ============================================================================
# ROUTING TABLE
# ============================================================================

COMMANDS = {
    'crystal': commands.cmd_crystal,
    'demazure': commands.cmd_demazure,
    'tensor': commands.cmd_tensor,
    'analyze': commands.cmd_analyze,
    'sweep': commands.cmd_sweep,
    'char': commands.cmd_char,
    'experiment': commands.cmd_experiment,
}


def _add_type(parser, required=True):
    parser.add_argument('--type', dest='cartan_type', required=required, help='Cartan type, e.g. A2, B3, G2')


def _add_output(parser, formats):
    parser.add_argument('--out', help='output file')
    parser.add_argument('--format', choices=formats, default=formats[0])


def _common_options():
    # unset unless given, so a value before the subcommand survives the subparser
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--budget', type=int, default=argparse.SUPPRESS,
        help='maximum elements of any tensor product (env DEMKIT_BUDGET)',
    )
    common.add_argument('--log-level', choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'), default=argparse.SUPPRESS)
    return common


def build_parser():
    parser = argparse.ArgumentParser(
        prog='demkit', description='Crystals, Demazure crystals and hinges.', parents=[_common_options()]
    )
    common = _common_options()
    sub = parser.add_subparsers(dest='command', required=True)

    crystal = sub.add_parser('crystal', parents=[common], help='build or import B(lambda)')
    _add_type(crystal, required=False)
    crystal.add_argument('--weight')
    crystal.add_argument('--import', dest='import_path', help='canonical JSON crystal to load')
    crystal.add_argument('--validate', action='store_true', help='check the crystal axioms')
    _add_output(crystal, ('json', 'dot'))

    demazure = sub.add_parser('demazure', parents=[common], help='print B_w(lambda) with its label and character')
    _add_type(demazure)
    demazure.add_argument('--weight', required=True)
    demazure.add_argument('--w', required=True)
    _add_output(demazure, ('json', 'dot'))

    tensor = sub.add_parser('tensor', parents=[common], help='decompose B(lambda) (x) B(mu)')
    _add_type(tensor)
    tensor.add_argument('--lambda', dest='lam', required=True)
    tensor.add_argument('--mu', required=True)

    analyze = sub.add_parser('analyze', parents=[common], help='four verdicts on B_w(lambda) (x) B_u(mu)')
    _add_type(analyze)
    analyze.add_argument('--lambda', dest='lam', required=True)
    analyze.add_argument('--w', required=True)
    analyze.add_argument('--mu', required=True)
    analyze.add_argument('--u', required=True)
    _add_output(analyze, ('json', 'dot'))

    sweep = sub.add_parser('sweep', parents=[common], help='exhaustive four-verdict sweep')
    _add_type(sweep)
    sweep.add_argument('--bound', type=int, default=2, help='largest weight coefficient')
    sweep.add_argument('--jobs', type=int, help='worker processes (env DEMKIT_JOBS)')
    _add_output(sweep, ('tsv',))

    char = sub.add_parser('char', parents=[common], help='compare a Demazure character with the operator formula')
    _add_type(char)
    char.add_argument('--weight', required=True)
    char.add_argument('--w', required=True)
    char.add_argument('--all-words', action='store_true')

    experiment = sub.add_parser('experiment', parents=[common], help='edge removal on the A2 tensor square')
    experiment.add_argument('--remove', choices=('both', 'first', 'second'), default='both')
    experiment.add_argument('--skip-removal', action='store_true')

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.budget = getattr(args, 'budget', None)
    args.log_level = getattr(args, 'log_level', None)

    logging.config.dictConfig(settings.LOGGING)
    if args.log_level:
        for name in settings.LOGGING['loggers']:
            logging.getLogger(name).setLevel(args.log_level)
    if args.budget is not None:
        settings.ELEMENT_BUDGET = args.budget

    handler = COMMANDS[args.command]
    try:
        return handler(args)
    except (InvalidInput, CartanMismatch, HypothesisViolation, BudgetExceeded) as exc:
        logger.info(f'{args.command}: {exc}')
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_INPUT
    except TheoremFalsified as exc:
        logger.error(f'{args.command}: {exc} {exc.record!r}')
        print(f'error: theorem falsified: {exc}', file=sys.stderr)
        return EXIT_FALSIFIED
    except OSError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_INPUT
