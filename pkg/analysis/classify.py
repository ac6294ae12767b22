"""
The four verdicts on B_w(lam) (x) B_u(mu): extremality, absence of broken
hinges, Kouno's criterion and decomposability into Demazure crystals.
"""

import logging
from functools import lru_cache

from demkit.exceptions import CartanMismatch, InvalidInput, TheoremFalsified
from lie.cartan import is_dominant
from lie.weyl import kouno_criterion, min_coset_rep
from crystals.models import Subcrystal
from crystals.operations import component_split, highest_weight_elements, tensor
from crystals.tableaux import highest_weight_crystal
from demazure.subsets import decompose_demazure, demazure_subset
from analysis.extremal import is_extremal
from analysis.hinges import find_hinges
from analysis.models import ComponentCensus, ProductVerdict

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def _ambient_product(c, lam, mu):
    gx = highest_weight_crystal(c, lam)
    gy = highest_weight_crystal(c, mu)
    return gx, gy, tensor(gx, gy)


def _crystal_verdicts(gx, gy, ambient, w, u):
    X = demazure_subset(gx, w)
    Y = demazure_subset(gy, u)
    S = Subcrystal(ambient, frozenset(ambient.index_of(x, y) for x in X.members for y in Y.members))
    extremal = is_extremal(ambient, S).extremal
    report = find_hinges(gx, X, gy, Y, product=ambient)
    decomposition = decompose_demazure(ambient, S)
    return extremal, report, decomposition


@lru_cache(maxsize=4096)
def _cached_verdicts(c, lam, w, mu, u):
    gx, gy, ambient = _ambient_product(c, lam, mu)
    return _crystal_verdicts(gx, gy, ambient, w, u)


def classify_demazure_product(lam, w, mu, u, ambients=None):
    """
    Build B_w(lam) (x) B_u(mu) and compute the four verdicts independently.

    The crystal-side verdicts are cached per coset (floor(w)^lam,
    floor(u)^mu); Kouno's criterion always sees the representatives given.

    Args:
        ambients: optional (B(lam), B(mu)) pair, e.g. imported crystals of a
            type without a tableau model.

    Raises:
        InvalidInput: lam or mu is not dominant.
        TheoremFalsified: the verdicts disagree (the record is attached).
    """
    c = w.cartan
    if u.cartan != c:
        raise CartanMismatch(f'w in {c} but u in {u.cartan}')
    lam, mu = c.check_weight(lam), c.check_weight(mu)
    for name, weight in (('lambda', lam), ('mu', mu)):
        if not is_dominant(c, weight):
            raise InvalidInput(f'{name} = {weight} is not dominant')

    if ambients is None:
        extremal, report, decomposition = _cached_verdicts(
            c, lam, min_coset_rep(w, lam), mu, min_coset_rep(u, mu)
        )
    else:
        gx, gy = ambients
        extremal, report, decomposition = _crystal_verdicts(gx, gy, tensor(gx, gy), w, u)
    kouno = kouno_criterion(lam, w, mu, u)

    verdict = ProductVerdict(
        lam=lam, w=w, mu=mu, u=u,
        extremal=extremal,
        broken_hinge_free=report.hinge_free,
        kouno=kouno,
        demazure_sum=decomposition.succeeded,
        n_broken_hinges=report.n_broken,
        labels=tuple(decomposition.labels) if decomposition.succeeded else None,
        failure=decomposition.failure,
    )
    if not verdict.agree:
        logger.error(f'verdicts disagree for lam={lam} w={w} mu={mu} u={u}: {verdict.verdicts}')
        raise TheoremFalsified('extremal / hinge-free / Kouno / Demazure-sum disagree', record=verdict)
    logger.debug(f'lam={lam} w={w} mu={mu} u={u}: {verdict.extremal}')
    return verdict


def component_census(ambient, S):
    """
    For every ambient component meeting S: its highest weight, the size of
    the intersection, whether the intersection is extremal, and its
    Demazure label when it is one.
    """
    census = []
    for component in component_split(ambient):
        meet = component.members & S.members
        if not meet:
            continue
        tops = highest_weight_elements(ambient, component)
        top, weight = tops[0] if len(tops) == 1 else (None, None)
        piece = decompose_demazure(ambient, Subcrystal(ambient, meet), induced=False)
        census.append(ComponentCensus(
            top=top,
            weight=weight,
            size=len(meet),
            extremal=is_extremal(ambient, meet).extremal,
            label=piece.labels[0] if piece.succeeded else None,
        ))
    return census
