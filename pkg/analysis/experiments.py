"""
Edge-removal experiment on the A_2 tensor square B_{s1 s2}(rho) (x) B_{s1 s2}(rho).

The product subset has two broken 2-hinges. Removing the f_2 edges that end
in them makes the subset extremal, and the surviving pieces are Demazure
crystals.
"""

import logging

from demkit.exceptions import InvalidInput
from lie.cartan import build_cartan
from lie.weyl import from_word
from crystals.models import Subcrystal
from crystals.operations import remove_edge, validate
from crystals.tableaux import highest_weight_crystal
from demazure.subsets import decompose_demazure, demazure_subset
from analysis.extremal import is_extremal, product_subset
from analysis.hinges import active_broken_hinges, find_hinges
from analysis.models import ExperimentReport

logger = logging.getLogger(__name__)

REMOVAL_CHOICES = ('both', 'first', 'second', 'none')


def tensor_square_scenario():
    """(B(rho), X = B_{s1 s2}(rho), ambient product, X (x) X)."""
    c = build_cartan('A', 2)
    g = highest_weight_crystal(c, (1, 1))
    X = demazure_subset(g, from_word(c, (1, 2)))
    ambient, S = product_subset(g, X, g, X)
    return g, X, ambient, S


def edges_into_broken_hinges(ambient, report):
    """(i, source, hinge) for each broken hinge, in hinge order."""
    return [(h.color, ambient.e(h.element, h.color), h.element) for h in report.broken]


def edge_removal_experiment(remove='both'):
    """
    Run the experiment; `remove` selects which of the two edges go.

    Returns:
        ExperimentReport: before verdicts always, after verdicts unless
        remove is 'none'.
    """
    if remove not in REMOVAL_CHOICES:
        raise InvalidInput(f'remove must be one of {", ".join(REMOVAL_CHOICES)}')
    g, X, ambient, S = tensor_square_scenario()
    report = find_hinges(g, X, g, X, product=ambient)
    result = ExperimentReport(
        before_broken=report.n_broken,
        before_extremal=is_extremal(ambient, S).extremal,
        before_decomposable=decompose_demazure(ambient, S).succeeded,
    )
    logger.info(
        f'before: {result.before_broken} broken hinges, extremal={result.before_extremal}, '
        f'decomposable={result.before_decomposable}'
    )
    if remove == 'none':
        return result

    edges = edges_into_broken_hinges(ambient, report)
    selected = {'both': edges, 'first': edges[:1], 'second': edges[1:2]}[remove]
    modified = ambient
    for i, source, _ in selected:
        modified = remove_edge(modified, source, i)
    modified_subset = Subcrystal(modified, S.members)
    decomposition = decompose_demazure(modified, modified_subset)

    result.removed = selected
    result.after_active_broken = len(active_broken_hinges(modified, report))
    result.after_extremal = is_extremal(modified, modified_subset).extremal
    result.after_decomposable = decomposition.succeeded
    result.after_labels = decomposition.labels
    result.after_valid = validate(modified).passed
    logger.info(
        f'after removing {len(selected)} edge(s): {result.after_active_broken} broken hinges, '
        f'extremal={result.after_extremal}, decomposable={result.after_decomposable}'
    )
    return result
