"""
Characters of subsets and the Demazure operators pi_i acting on Laurent
polynomials in the weight lattice.

The operators are pure polynomial algebra and never consult a crystal, so
comparing the two sides of demazure_character_check is a real cross-check.
"""

import logging

from lie.cartan import add_weights, pairing, scale_weight, simple_root_in_weight_coords
from lie.weyl import enumerate_reduced_words, reduce_word
from crystals.models import Subcrystal
from demazure.models import LaurentPolynomial
from demazure.subsets import demazure_subset, highest_weight_top

logger = logging.getLogger(__name__)


def character(g, S):
    """Sum of x^wt(b) over b in S."""
    members = S.members if isinstance(S, Subcrystal) else S
    terms = {}
    for b in members:
        wt = g.wt(b)
        terms[wt] = terms.get(wt, 0) + 1
    return LaurentPolynomial(terms)


def _operator_on_monomial(c, i, exponent):
    alpha = simple_root_in_weight_coords(c, i)
    m = pairing(c, i, exponent)
    if m >= 0:
        return {add_weights(exponent, scale_weight(-k, alpha)): 1 for k in range(m + 1)}
    if m == -1:
        return {}
    return {add_weights(exponent, scale_weight(k, alpha)): -1 for k in range(1, -m)}


def demazure_operator(c, i, f):
    """
    pi_i, extended linearly from

        pi_i x^lam =  x^lam + x^(lam - alpha_i) + ... + x^(s_i lam)   if m >= 0
                   =  0                                               if m = -1
                   = -(x^(lam + alpha_i) + ... + x^(s_i lam - alpha_i))   if m <= -2

    with m = <alpha_i^vee, lam>.
    """
    i = c.check_index(i)
    result = {}
    for exponent, coefficient in f.terms.items():
        for image, sign in _operator_on_monomial(c, i, exponent).items():
            result[image] = result.get(image, 0) + sign * coefficient
    return LaurentPolynomial(result)


def apply_word(c, word, f):
    """pi_{i_1} ... pi_{i_l} f, rightmost operator first."""
    for i in reversed(tuple(word)):
        f = demazure_operator(c, i, f)
    return f


def demazure_character_check(g, w, all_words=False):
    """
    Compare character(B_w(lam)) with pi_w x^lam.

    With all_words, every reduced word of w must give the same polynomial.
    """
    _, lam = highest_weight_top(g)
    expected = character(g, demazure_subset(g, w))
    words = enumerate_reduced_words(w) if all_words else [reduce_word(w)]
    start = LaurentPolynomial.monomial(lam)
    for word in words:
        computed = apply_word(g.cartan, word.letters, start)
        if computed != expected:
            logger.warning(f'character mismatch for word {word}: {computed} != {expected}')
            return False
    return True
