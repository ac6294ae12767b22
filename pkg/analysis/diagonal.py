"""
The diagonal component F({b_lam (x) b_mu}) of B(lam) (x) B(mu) and its
intersections with products of Demazure crystals.

When <alpha_i^vee, mu> = 0 whenever <alpha_i^vee, lam> = 0 and u <= v, the
intersection of the diagonal component with B_u(lam) (x) B_v(mu) is
isomorphic to B_u(lam + mu); for tensor powers, the intersection with
B_w(lam)^(x)m is B_w(m lam).
"""

import logging

from demkit.exceptions import HypothesisViolation, InvalidInput, TheoremFalsified
from lie.cartan import add_weights, scale_weight
from lie.weyl import bruhat_leq, enumerate_weyl_group
from crystals.models import Subcrystal
from crystals.operations import (
    canonical_component_iso,
    check_budget,
    closure_E_all,
    closure_F_all,
    tensor,
)
from crystals.tableaux import highest_weight_crystal
from demazure.models import DemazureLabel
from demazure.subsets import demazure_subset, highest_weight_top, recognize_demazure

logger = logging.getLogger(__name__)


def _closure_component(product, start):
    current = Subcrystal(product, frozenset({start}))
    while True:
        grown = closure_F_all(product, closure_E_all(product, current))
        if grown.members == current.members:
            return current
        current = grown


def diagonal_component(gx, gy, product=None):
    """The component of gx (x) gy containing b_lam (x) b_mu, as a subset of the product."""
    top_x, _ = highest_weight_top(gx)
    top_y, _ = highest_weight_top(gy)
    if product is None:
        product = tensor(gx, gy)
    return _closure_component(product, product.index_of(top_x, top_y))


def lemma_diagonal_check(gx, gy, component=None):
    """
    For every w in W: each x (x) y of the diagonal component with x in
    B_w(lam) has y in B_w(mu).
    """
    if component is None:
        component = diagonal_component(gx, gy)
    product = component.ambient
    pairs = [product.pair(b) for b in component.members]
    for w in enumerate_weyl_group(gx.cartan):
        xs = demazure_subset(gx, w).members
        ys = demazure_subset(gy, w).members
        for pair in pairs:
            if pair.left in xs and pair.right not in ys:
                logger.warning(f'diagonal lemma fails at {pair} for w={w}')
                return False
    return True


def _check_diagonal_hypothesis(lam, mu):
    for lam_i, mu_i in zip(lam, mu):
        if lam_i == 0 and mu_i != 0:
            raise HypothesisViolation(f'mu = {mu} pairs nonzero where lam = {lam} vanishes')


def _recognize_in_model(product, component, members, nu):
    target = highest_weight_crystal(product.cartan, nu)
    iso = canonical_component_iso(product, component, target)
    if not iso:
        raise TheoremFalsified(f'diagonal component is not isomorphic to B{nu}: {iso.failure}')
    return recognize_demazure(target, iso.image(members))


def diagonal_label(lam, mu, u, v):
    """
    The Demazure label of F({b_lam (x) b_mu}) intersected with B_u(lam) (x) B_v(mu).

    Raises:
        HypothesisViolation: the pairing condition on lam, mu fails or u is not below v.
    """
    c = u.cartan
    lam, mu = c.check_weight(lam), c.check_weight(mu)
    _check_diagonal_hypothesis(lam, mu)
    if not bruhat_leq(u, v):
        raise HypothesisViolation(f'{u} is not below {v} in Bruhat order')
    gx = highest_weight_crystal(c, lam)
    gy = highest_weight_crystal(c, mu)
    product = tensor(gx, gy)
    component = diagonal_component(gx, gy, product)
    xs, ys = demazure_subset(gx, u).members, demazure_subset(gy, v).members
    meet = frozenset(b for b in component.members if product.pair(b).left in xs and product.pair(b).right in ys)
    return _recognize_in_model(product, component, meet, add_weights(lam, mu))


def diagonal_theorem_check(lam, mu, u, v):
    """The intersection is recognized as B_u(lam + mu), and the diagonal lemma holds."""
    c = u.cartan
    label = diagonal_label(lam, mu, u, v)
    expected = DemazureLabel.of(add_weights(c.check_weight(lam), c.check_weight(mu)), u)
    if label != expected:
        logger.warning(f'diagonal intersection recognized as {label}, expected {expected}')
        return False
    gx = highest_weight_crystal(c, tuple(lam))
    gy = highest_weight_crystal(c, tuple(mu))
    return lemma_diagonal_check(gx, gy)


def tensor_power_diagonal_check(lam, w, m, budget=None):
    """
    F({b_lam (x) ... (x) b_lam}) intersected with B_w(lam)^(x)m is B_w(m lam).

    Raises:
        InvalidInput: m < 1.
        BudgetExceeded: |B(lam)|^m is above the element budget.
    """
    if m < 1:
        raise InvalidInput(f'tensor power needs m >= 1, got {m}')
    c = w.cartan
    lam = c.check_weight(lam)
    g = highest_weight_crystal(c, lam)
    check_budget(len(g) ** m, budget)
    top, _ = highest_weight_top(g)
    factor = demazure_subset(g, w).members

    power, members, diagonal_top = g, factor, top
    for _ in range(m - 1):
        grown = tensor(power, g, budget)
        members = frozenset(grown.index_of(a, x) for a in members for x in factor)
        diagonal_top = grown.index_of(diagonal_top, top)
        power = grown
    component = _closure_component(power, diagonal_top)
    nu = scale_weight(m, lam)
    label = _recognize_in_model(power, component, component.members & members, nu)
    expected = DemazureLabel.of(nu, w)
    logger.info(f'diagonal of B_w{lam}^{m}: {label} (expected {expected})')
    return label == expected
