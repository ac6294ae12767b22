"""
Subcommand handlers.

Each handler takes the parsed arguments, prints its report on stdout and
returns the exit code. Input errors propagate as exceptions and are turned
into exit codes by demkit.cli.
"""

import logging
import sys
from pathlib import Path

from demkit import settings
from demkit.exceptions import InvalidInput, TheoremFalsified
from lie.cartan import parse_cartan_type
from lie.weyl import parse_word, reduce_word
from crystals.models import Subcrystal
from crystals.operations import highest_weight_elements, tensor, validate
from crystals.serializers import crystal_from_json, crystal_to_dot, crystal_to_json, subset_to_json
from crystals.tableaux import format_tableau, highest_weight_crystal
from demazure.characters import apply_word, character, demazure_character_check
from demazure.models import DemazureLabel, LaurentPolynomial
from demazure.subsets import decompose_demazure, demazure_subset
from analysis.classify import classify_demazure_product
from analysis.experiments import edge_removal_experiment
from analysis.extremal import product_subset
from analysis.hinges import find_hinges, hinge_report_to_dot, hinge_report_to_json
from analysis.sweeps import dominant_weights, run_sweep, summary, write_tsv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_FALSIFIED = 3


# ============================================================================
# INPUT HELPERS
# ============================================================================

def cartan_from_args(args):
    if not getattr(args, 'cartan_type', None):
        raise InvalidInput('--type is required')
    return parse_cartan_type(args.cartan_type)


def parse_weight(c, text):
    """'1,1' -> (1, 1) in fundamental-weight coordinates."""
    if text is None:
        raise InvalidInput('a weight is required')
    try:
        values = tuple(int(part) for part in str(text).split(','))
    except ValueError as exc:
        raise InvalidInput(f'bad weight {text!r}: expected comma-separated integers') from exc
    return c.check_weight(values)


def weight_text(wt):
    return '(' + ','.join(str(x) for x in wt) + ')'


def flag(value):
    return 'true' if value else 'false'


def element_text(g, b):
    """Tableau for a tableaux crystal, factor pair for a product, index otherwise."""
    if g.factors is not None:
        pair = g.pair(b)
        left, right = g.factors
        return f'{element_text(left, pair.left)} (x) {element_text(right, pair.right)}'
    if g.labels is not None and g.labels[b] is not None:
        return format_tableau(g.labels[b])
    return str(b)


def output_path(path):
    path = Path(path)
    if not path.is_absolute() and path.parent == Path('.'):
        path = settings.DEFAULT_OUTPUT_DIR / path
    return path


def write_output(path, text):
    path = output_path(path)
    path.write_text(text)
    logger.info(f'wrote {path}')


# ============================================================================
# HANDLERS
# ============================================================================

def cmd_crystal(args):
    if args.import_path:
        g = crystal_from_json(Path(args.import_path).read_text())
    else:
        c = cartan_from_args(args)
        g = highest_weight_crystal(c, parse_weight(c, args.weight))

    if args.validate:
        report = validate(g)
        if not report.passed:
            for violation in report.violations:
                print(f'violation: {violation}', file=sys.stderr)
            print(f'error: {len(report.violations)} axiom violation(s)', file=sys.stderr)
            return EXIT_INPUT

    tops = ', '.join(weight_text(wt) for _, wt in highest_weight_elements(g))
    print(f'{len(g)} elements, hw {tops}')
    if args.out:
        text = crystal_to_json(g) if args.format == 'json' else crystal_to_dot(g)
        write_output(args.out, text)
    return EXIT_OK


def cmd_demazure(args):
    c = cartan_from_args(args)
    lam = parse_weight(c, args.weight)
    w = parse_word(c, args.w)
    g = highest_weight_crystal(c, lam)
    subset = demazure_subset(g, w)
    print(f'{DemazureLabel.of(lam, w)}: {len(subset)} elements')
    for b in subset:
        print(f'  {element_text(g, b)}  {weight_text(g.wt(b))}')
    print(f'character: {character(g, subset)}')
    if args.out:
        text = subset_to_json(subset) if args.format == 'json' else crystal_to_dot(g, subset)
        write_output(args.out, text)
    return EXIT_OK


def cmd_tensor(args):
    c = cartan_from_args(args)
    lam, mu = parse_weight(c, args.lam), parse_weight(c, args.mu)
    gx, gy = highest_weight_crystal(c, lam), highest_weight_crystal(c, mu)
    product = tensor(gx, gy)
    decomposition = decompose_demazure(product, Subcrystal(product, frozenset(product.elements)))
    if not decomposition.succeeded:
        raise TheoremFalsified(f'B{lam} (x) B{mu} is not a sum of highest-weight crystals')
    print(f'B{weight_text(lam)} (x) B{weight_text(mu)}: {len(product)} elements, '
          f'{len(decomposition.pieces)} components')
    for label in decomposition.labels:
        print(f'  B{weight_text(label.weight)}')
    return EXIT_OK


def cmd_analyze(args):
    c = cartan_from_args(args)
    lam, mu = parse_weight(c, args.lam), parse_weight(c, args.mu)
    w, u = parse_word(c, args.w), parse_word(c, args.u)
    verdict = classify_demazure_product(lam, w, mu, u)

    gx, gy = highest_weight_crystal(c, lam), highest_weight_crystal(c, mu)
    X, Y = demazure_subset(gx, w), demazure_subset(gy, u)
    ambient, product = product_subset(gx, X, gy, Y)
    report = find_hinges(gx, X, gy, Y, product=ambient)

    print(f'{DemazureLabel.of(lam, w)} (x) {DemazureLabel.of(mu, u)}: '
          f'{len(product)} elements in a {len(ambient)}-element product')
    print(f'extremal: {flag(verdict.extremal)}')
    print(f'broken_hinge_free: {flag(verdict.broken_hinge_free)}')
    print(f'kouno: {flag(verdict.kouno)}')
    print(f'demazure_sum: {flag(verdict.demazure_sum)}')
    print(f'broken hinges: {report.n_broken}')
    for hinge in report.broken:
        print(f'  {hinge.color}-hinge {element_text(ambient, hinge.element)}'
              f' -> {element_text(ambient, hinge.witness)} outside')
    if verdict.labels:
        print('labels: ' + ', '.join(str(label) for label in verdict.labels))
    else:
        print(f'decomposition failed: {verdict.failure.failure}')

    if args.out:
        text = hinge_report_to_json(report) if args.format == 'json' else hinge_report_to_dot(ambient, product, report)
        write_output(args.out, text)
    return EXIT_OK if verdict.extremal else EXIT_FALSE


def cmd_sweep(args):
    c = cartan_from_args(args)
    if c.rank > settings.SWEEP_MAX_RANK and args.budget is None:
        raise InvalidInput(f'sweeps above rank {settings.SWEEP_MAX_RANK} need an explicit --budget')
    if args.bound < 0:
        raise InvalidInput('--bound must be nonnegative')
    rows = run_sweep(c, dominant_weights(c, args.bound), jobs=args.jobs)
    path = output_path(args.out or f'sweep-{c}.tsv')
    with path.open('w', newline='') as handle:
        write_tsv(rows, handle)
    print(summary(rows))
    if any(row.disagreement for row in rows):
        return EXIT_FALSIFIED
    return EXIT_OK


def cmd_char(args):
    c = cartan_from_args(args)
    lam = parse_weight(c, args.weight)
    w = parse_word(c, args.w)
    g = highest_weight_crystal(c, lam)
    print(f'crystal:  {character(g, demazure_subset(g, w))}')
    print(f'operator: {apply_word(c, reduce_word(w).letters, LaurentPolynomial.monomial(lam))}')
    if demazure_character_check(g, w, all_words=args.all_words):
        print('match')
        return EXIT_OK
    print('mismatch')
    return EXIT_FALSE


def cmd_experiment(args):
    report = edge_removal_experiment('none' if args.skip_removal else args.remove)
    print(f'before: {report.before_broken} broken hinges, extremal {flag(report.before_extremal)}, '
          f'demazure_sum {flag(report.before_decomposable)}')
    if not report.performed:
        return EXIT_OK
    for i, source, target in report.removed:
        print(f'removed f_{i} edge {source} -> {target}')
    print(f'after: {report.after_active_broken} broken hinges, extremal {flag(report.after_extremal)}, '
          f'demazure_sum {flag(report.after_decomposable)}')
    if report.after_labels:
        print('labels: ' + ', '.join(str(label) for label in report.after_labels))
    if report.succeeded:
        return EXIT_OK
    if args.remove == 'both':
        raise TheoremFalsified('removing both edges did not give an extremal Demazure sum')
    return EXIT_FALSE
