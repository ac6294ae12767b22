"""
Weyl Group Module

Weyl group elements as integer matrices on the weight lattice, with length,
descents, reduced words, Bruhat order, stabilizers W_lam, minimal/maximal
coset representatives and parabolic membership.

Key Concepts:
- l(w) = number of positive roots sent to negative roots by w.
- i is a right descent of w iff w(alpha_i) is a negative root.
- Left descents of w are the right descents of w^-1.
- For dominant lam, W_lam is generated by {s_i : <alpha_i^vee, lam> = 0}.

Word syntax (CLI and files):
    "s1*s2*s1", "s1s2s1", "121", "id", "w0"
"""

import logging
import re
from functools import lru_cache

import numpy as np

from demkit.exceptions import CartanMismatch, InvalidInput
from lie.cartan import is_dominant, simple_root_in_weight_coords
from lie.models import ReducedWord, WeylElement

logger = logging.getLogger(__name__)

STARRED_LETTER = re.compile(r's(\d+)')


# ============================================================================
# CONSTRUCTION
# ============================================================================

def _element(c, array):
    return WeylElement(cartan=c, matrix=tuple(tuple(int(v) for v in row) for row in array))


@lru_cache(maxsize=None)
def identity(c):
    return _element(c, np.eye(c.rank, dtype=np.int64))


@lru_cache(maxsize=None)
def simple_reflection(c, i):
    """Matrix of s_i: column i becomes omega_i - alpha_i, other columns fixed."""
    i = c.check_index(i)
    array = np.eye(c.rank, dtype=np.int64)
    array[:, i - 1] -= np.array(simple_root_in_weight_coords(c, i), dtype=np.int64)
    return _element(c, array)


def from_word(c, letters):
    """Evaluate s_{i_1} ... s_{i_k}; the word need not be reduced."""
    w = identity(c)
    for i in letters:
        w = multiply(w, simple_reflection(c, i))
    return w


def multiply(a, b):
    """(ab)(lam) = a(b(lam))."""
    if a.cartan != b.cartan:
        raise CartanMismatch(f'cannot multiply elements of {a.cartan} and {b.cartan}')
    return _element(a.cartan, a.array @ b.array)


def act(w, lam):
    """The weight w(lam)."""
    lam = w.cartan.check_weight(lam)
    return tuple(int(v) for v in w.array @ np.array(lam, dtype=np.int64))


def inverse(w):
    """w^-1, as the reversed canonical reduced word."""
    return from_word(w.cartan, reversed(reduce_word(w).letters))


# ============================================================================
# LENGTH AND DESCENTS
# ============================================================================

@lru_cache(maxsize=None)
def length(w):
    """Number of positive roots sent to negative roots."""
    c = w.cartan
    negatives = c.negative_roots_weight
    return sum(
        1 for beta in c.positive_roots_weight if act(w, beta) in negatives
    )


@lru_cache(maxsize=None)
def right_descents(w):
    """{i : l(w s_i) < l(w)}, via w(alpha_i) < 0."""
    c = w.cartan
    return frozenset(
        i for i in c.indices
        if act(w, simple_root_in_weight_coords(c, i)) in c.negative_roots_weight
    )


@lru_cache(maxsize=None)
def left_descents(w):
    """{i : l(s_i w) < l(w)}."""
    return right_descents(inverse(w))


@lru_cache(maxsize=None)
def reduce_word(w):
    """
    Canonical reduced word: repeatedly strip the smallest right descent.

    Returns:
        ReducedWord: letters i_1..i_l with w = s_{i_1} ... s_{i_l}
    """
    c = w.cartan
    letters = []
    current = w
    while True:
        descents = right_descents(current)
        if not descents:
            break
        i = min(descents)
        letters.append(i)
        current = multiply(current, simple_reflection(c, i))
    return ReducedWord(tuple(reversed(letters)))


def enumerate_reduced_words(w):
    """All reduced words of w, by backtracking over right descents (sorted)."""
    c = w.cartan
    words = []

    def backtrack(current, suffix):
        descents = right_descents(current)
        if not descents:
            words.append(ReducedWord(tuple(suffix)))
            return
        for i in sorted(descents):
            backtrack(multiply(current, simple_reflection(c, i)), [i] + suffix)

    backtrack(w, [])
    return sorted(words, key=lambda word: word.letters)


def enumerate_weyl_group(c):
    """All of W by breadth-first search from the identity (test oracle, small rank)."""
    start = identity(c)
    seen = {start}
    order = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for i in c.indices:
                v = multiply(w, simple_reflection(c, i))
                if v not in seen:
                    seen.add(v)
                    order.append(v)
                    nxt.append(v)
        frontier = nxt
    logger.debug(f'W({c}) has {len(order)} elements')
    return order


def longest_element(c, generators=None):
    """Longest element of the parabolic subgroup generated by `generators` (default: all of W)."""
    generators = set(c.indices if generators is None else generators)
    w = identity(c)
    while True:
        grow = [i for i in sorted(generators) if i not in right_descents(w)]
        if not grow:
            return w
        w = multiply(w, simple_reflection(c, grow[0]))


# ============================================================================
# BRUHAT ORDER
# ============================================================================

@lru_cache(maxsize=None)
def bruhat_leq(u, w):
    """
    u <= w in Bruhat order.

    Descent recursion: pick s in D_R(w). If s in D_R(u) then u <= w iff
    us <= ws, otherwise u <= w iff u <= ws.
    """
    if u.cartan != w.cartan:
        raise CartanMismatch(f'cannot compare elements of {u.cartan} and {w.cartan}')
    if length(u) > length(w):
        return False
    descents = right_descents(w)
    if not descents:
        return not right_descents(u)
    i = min(descents)
    s = simple_reflection(w.cartan, i)
    if i in right_descents(u):
        return bruhat_leq(multiply(u, s), multiply(w, s))
    return bruhat_leq(u, multiply(w, s))


# ============================================================================
# STABILIZERS, COSETS, PARABOLICS
# ============================================================================

def stabilizer_generators(c, lam):
    """{i : <alpha_i^vee, lam> = 0}; generators of W_lam for dominant lam."""
    lam = c.check_weight(lam)
    if not is_dominant(c, lam):
        raise InvalidInput(f'stabilizer requested for non-dominant weight {lam}')
    return frozenset(i for i in c.indices if lam[i - 1] == 0)


def min_coset_rep(w, lam):
    """The minimal-length element of w W_lam."""
    c = w.cartan
    stab = stabilizer_generators(c, lam)
    while True:
        shorten = sorted(stab & right_descents(w))
        if not shorten:
            return w
        w = multiply(w, simple_reflection(c, shorten[0]))


def max_coset_rep(w, lam):
    """The maximal-length element of w W_lam."""
    c = w.cartan
    stab = stabilizer_generators(c, lam)
    while True:
        lengthen = sorted(stab - right_descents(w))
        if not lengthen:
            return w
        w = multiply(w, simple_reflection(c, lengthen[0]))


def parabolic_membership(w, generators):
    """True iff w lies in the parabolic subgroup generated by `generators`."""
    return set(reduce_word(w).letters) <= set(generators)


def kouno_criterion(lam, w, mu, u):
    """
    Kouno's criterion for B_w(lam) (x) B_u(mu) to be a direct sum of Demazure
    crystals: floor(w)^lam lies in W_sigma, sigma = ceil(u)^mu, where W_sigma
    is generated by the left descents of sigma.
    """
    sigma = max_coset_rep(u, mu)
    parabolic = left_descents(sigma)
    shortest = min_coset_rep(w, lam)
    verdict = parabolic_membership(shortest, parabolic)
    logger.debug(
        f'kouno: floor(w)={shortest}, ceil(u)={sigma}, W_sigma=<{sorted(parabolic)}> -> {verdict}'
    )
    return verdict


# ============================================================================
# WORD SYNTAX
# ============================================================================

def format_word(word):
    letters = word.letters if isinstance(word, ReducedWord) else tuple(word)
    if not letters:
        return 'id'
    return '*'.join(f's{i}' for i in letters)


def parse_word(c, text):
    """
    Parse "s1*s2", "s1s2", "12", "id"/"e" or "w0" into a Weyl element.

    Raises:
        InvalidInput: on unparseable text or out-of-range letters.
    """
    text = str(text).strip().lower()
    if text in ('', 'id', 'e', '1_w'):
        return identity(c)
    if text == 'w0':
        return longest_element(c)
    if text.startswith('s'):
        compact = text.replace('*', '').replace(' ', '')
        letters = [int(m) for m in STARRED_LETTER.findall(compact)]
        if ''.join(f's{i}' for i in letters) != compact:
            raise InvalidInput(f'cannot parse Weyl word {text!r}')
    elif text.isdigit():
        if c.rank >= 10:
            raise InvalidInput('digit-string words are ambiguous at rank >= 10; use s1*s2')
        letters = [int(ch) for ch in text]
    else:
        raise InvalidInput(f'cannot parse Weyl word {text!r}')
    for i in letters:
        c.check_index(i)
    return from_word(c, letters)
