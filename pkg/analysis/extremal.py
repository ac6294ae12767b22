"""
Extremality (the string property) of subsets, product subsets X (x) Y, the
brute-force enumeration of extremal subsets and the factor-closure check.

A nonempty subset X is extremal when every i-string S meets it in the empty
set, all of S, or exactly the top of S.
"""

import logging

from demkit.exceptions import HypothesisViolation, InvalidInput, TheoremFalsified
from crystals.models import Subcrystal
from crystals.operations import i_strings, is_e_closed, tensor
from analysis.models import ExtremalityReport, FactorClosureReport, StringViolation

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 16


def members_of(X):
    return frozenset(X.members if isinstance(X, Subcrystal) else X)


def is_extremal(g, X):
    """
    Classify the intersection of X with every i-string of g.

    Raises:
        InvalidInput: X is empty.
    """
    members = members_of(X)
    if not members:
        raise InvalidInput('extremality is defined for nonempty subsets only')
    violations = []
    for i in g.cartan.indices:
        for string in i_strings(g, i):
            pattern = tuple(b in members for b in string)
            hits = sum(pattern)
            if hits in (0, len(string)) or (hits == 1 and pattern[0]):
                continue
            violations.append(StringViolation(color=i, string=tuple(string), pattern=pattern))
    return ExtremalityReport(extremal=not violations, violations=violations)


def product_subset(gx, X, gy, Y, budget=None):
    """
    The ambient gx (x) gy and the member set {x (x) y : x in X, y in Y}.

    Raises:
        CartanMismatch: gx and gy have different Cartan data.
    """
    ambient = tensor(gx, gy, budget)
    members = frozenset(ambient.index_of(x, y) for x in members_of(X) for y in members_of(Y))
    return ambient, Subcrystal(ambient, members)


def enumerate_extremal_subsets(g, e_closed=True):
    """
    Every nonempty extremal subset of g (optionally only the E-closed ones),
    by brute force over the power set, ordered by size then members.
    """
    if len(g) > ENUMERATION_LIMIT:
        raise InvalidInput(f'refusing to enumerate 2^{len(g)} subsets')
    found = []
    for mask in range(1, 1 << len(g)):
        members = frozenset(b for b in g.elements if mask >> b & 1)
        if e_closed and not is_e_closed(g, members):
            continue
        if is_extremal(g, members).extremal:
            found.append(Subcrystal(g, members))
    found.sort(key=lambda s: (len(s), s.sorted_members))
    logger.info(f'{len(found)} extremal subsets of a {len(g)}-element crystal')
    return found


def factor_closure_check(gx, X, gy, Y):
    """
    For an extremal product X (x) Y: X is E-closed, and when Y is E-closed
    too, X is extremal.

    Raises:
        HypothesisViolation: X (x) Y is not extremal.
        TheoremFalsified: one of the two conclusions fails.
    """
    ambient, product = product_subset(gx, X, gy, Y)
    if not is_extremal(ambient, product).extremal:
        raise HypothesisViolation('factor closure needs an extremal product')
    x_e_closed = is_e_closed(gx, members_of(X))
    y_e_closed = is_e_closed(gy, members_of(Y))
    record = {'x': sorted(members_of(X)), 'y': sorted(members_of(Y))}
    if not x_e_closed:
        logger.error(f'extremal product with X not E-closed: {record}')
        raise TheoremFalsified('X (x) Y is extremal but X is not E-closed', record=record)
    x_extremal = None
    if y_e_closed:
        x_extremal = is_extremal(gx, X).extremal
        if not x_extremal:
            logger.error(f'extremal product with E-closed Y but X not extremal: {record}')
            raise TheoremFalsified('X (x) Y is extremal and Y is E-closed, but X is not extremal', record=record)
    return FactorClosureReport(
        x_e_closed=x_e_closed,
        y_e_closed=y_e_closed,
        x_extremal=x_extremal,
        y_extremal=is_extremal(gy, Y).extremal,
    )
