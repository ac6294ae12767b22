"""
i-hinges of a product subset X (x) Y.

x (x) y is an i-hinge when eps_i(x) > 0, phi_i(x) = 0, eps_i(y) = 0 and
phi_i(y) > 0; at a hinge e_i moves the left factor and f_i the right one.
The hinge is broken when f_i(y) is not in Y.
"""

import json
import logging

from demkit import settings
from demkit.exceptions import HypothesisViolation, TheoremFalsified
from crystals.operations import eps, phi, tensor
from crystals.serializers import crystal_to_dot
from analysis.extremal import members_of, is_extremal, product_subset
from analysis.models import Hinge, HingeReport

logger = logging.getLogger(__name__)


def _check_hinge_action(product, element, x, y, i, gx, gy):
    expected_e = product.index_of(gx.e(x, i), y)
    expected_f = product.index_of(x, gy.f(y, i))
    if product.e(element, i) != expected_e or product.f(element, i) != expected_f:
        record = {'element': element, 'color': i, 'left': x, 'right': y}
        logger.error(f'hinge action mismatch: {record}')
        raise TheoremFalsified('e_i/f_i do not act on the left/right factor at a hinge', record=record)


def find_hinges(gx, X, gy, Y, product=None):
    """
    Scan X (x) Y for i-hinges, checking at each one that e_i(x (x) y) =
    e_i(x) (x) y and f_i(x (x) y) = x (x) f_i(y) in the ambient product.

    Returns:
        HingeReport: every hinge, with the witness x (x) f_i(y) when broken.
    """
    if product is None:
        product = tensor(gx, gy)
    xs, ys = sorted(members_of(X)), members_of(Y)
    hinges = []
    for i in gx.cartan.indices:
        lefts = [x for x in xs if eps(gx, x, i) > 0 and phi(gx, x, i) == 0]
        rights = [y for y in sorted(ys) if eps(gy, y, i) == 0 and phi(gy, y, i) > 0]
        for x in lefts:
            for y in rights:
                element = product.index_of(x, y)
                _check_hinge_action(product, element, x, y, i, gx, gy)
                fy = gy.f(y, i)
                broken = fy not in ys
                witness = product.index_of(x, fy) if broken else None
                hinges.append(Hinge(element, x, y, i, broken, witness))
                logger.debug(f'{i}-hinge at {x} (x) {y}{" (broken)" if broken else ""}')
    report = HingeReport(hinges=sorted(hinges, key=lambda h: (h.color, h.element)))
    logger.info(f'{len(report.hinges)} hinges, {report.n_broken} broken')
    return report


def hinge_criterion(gx, X, gy, Y):
    """
    Extremality of X (x) Y for extremal X and Y, computed by the string scan
    and by the broken-hinge scan; the two must agree.

    Raises:
        HypothesisViolation: X or Y is not extremal.
        TheoremFalsified: the two scans disagree.
    """
    for name, g, S in (('X', gx, X), ('Y', gy, Y)):
        if not is_extremal(g, S).extremal:
            logger.warning(f'hinge criterion called with non-extremal {name}')
            raise HypothesisViolation(f'{name} is not extremal')
    ambient, product = product_subset(gx, X, gy, Y)
    extremal = is_extremal(ambient, product).extremal
    hinge_free = find_hinges(gx, X, gy, Y, product=ambient).hinge_free
    if extremal != hinge_free:
        record = {'x': sorted(members_of(X)), 'y': sorted(members_of(Y)), 'extremal': extremal}
        logger.error(f'string scan and hinge scan disagree: {record}')
        raise TheoremFalsified('extremality and broken-hinge freeness disagree', record=record)
    return extremal


def active_broken_hinges(modified, report):
    """Broken hinges whose incoming e_i edge survives in a modified crystal."""
    return [h for h in report.broken if modified.e(h.element, h.color) is not None]


def hinge_report_to_json(report):
    return json.dumps(report.to_dict(), sort_keys=True, separators=settings.JSON_SEPARATORS)


def hinge_report_to_dot(product, subset, report):
    """The product's DOT rendering with broken hinges and their f_i edges highlighted."""
    broken = report.broken
    return crystal_to_dot(
        product,
        subset,
        highlight_nodes=[h.element for h in broken],
        highlight_edges=[(h.color, h.element, h.witness) for h in broken],
    )
